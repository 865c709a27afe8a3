#include "hbvm/hamiltonian.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace hbvm {

Eigen::VectorXd SymplecticJ::apply(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out(2 * m);
    out.head(m) = v.tail(m);
    out.tail(m) = -v.head(m);
    return out;
}

Eigen::MatrixXd SymplecticJ::apply(const Eigen::MatrixXd& M) const {
    Eigen::MatrixXd out(2 * m, M.cols());
    out.topRows(m) = M.bottomRows(m);
    out.bottomRows(m) = -M.topRows(m);
    return out;
}

HamiltonianSystem::HamiltonianSystem(std::string label, int m, Energy energy, Gradient gradient,
                                     Hessian hessian, Eigen::VectorXd y0, bool separable)
    : label_(std::move(label)),
      m_(m),
      energy_(std::move(energy)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      y0_(std::move(y0)),
      separable_(separable) {
    if (m_ < 1) throw std::invalid_argument("HamiltonianSystem: half-dimension must be positive");
    if (y0_.size() != 2 * m_) throw std::invalid_argument("HamiltonianSystem: initial state has wrong size");
}

Eigen::VectorXd vector_field(const HamiltonianSystem& system, const Eigen::VectorXd& y) {
    return system.J().apply(system.gradient(y));
}

// --- charged particle ------------------------------------------------------

namespace {

constexpr double kAxisGuard = 1e-8;

// H = |f|^2 / (2 mass) with f = (x' - a x/r^2, y' - a y/r^2, z' + a log r).
struct ChargedParticleModel {
    double mass;
    double alpha;

    struct Terms {
        Eigen::Vector3d f;
        Eigen::Matrix<double, 3, 6> Df;
        double x, y, r2;
    };

    Terms terms(const Eigen::VectorXd& s) const {
        const double x = s(0), y = s(1);
        const double r2 = x * x + y * y;
        if (std::sqrt(r2) < kAxisGuard) {
            throw std::domain_error("charged_particle: state on the z-axis (rho = 0)");
        }
        const double r4 = r2 * r2;
        Terms t{};
        t.x = x;
        t.y = y;
        t.r2 = r2;
        t.f << s(3) - alpha * x / r2, s(4) - alpha * y / r2, s(5) + alpha * 0.5 * std::log(r2);
        t.Df.setZero();
        t.Df(0, 0) = -alpha * (y * y - x * x) / r4;
        t.Df(0, 1) = alpha * 2.0 * x * y / r4;
        t.Df(1, 0) = alpha * 2.0 * x * y / r4;
        t.Df(1, 1) = -alpha * (x * x - y * y) / r4;
        t.Df(2, 0) = alpha * x / r2;
        t.Df(2, 1) = alpha * y / r2;
        t.Df(0, 3) = 1.0;
        t.Df(1, 4) = 1.0;
        t.Df(2, 5) = 1.0;
        return t;
    }

    double energy(const Eigen::VectorXd& s) const {
        return terms(s).f.squaredNorm() / (2.0 * mass);
    }

    Eigen::VectorXd gradient(const Eigen::VectorXd& s) const {
        const Terms t = terms(s);
        return (t.Df.transpose() * t.f) / mass;
    }

    Eigen::MatrixXd hessian(const Eigen::VectorXd& s) const {
        const Terms t = terms(s);
        const double x = t.x, y = t.y;
        const double r4 = t.r2 * t.r2, r6 = r4 * t.r2;
        // Second derivatives in (x, y) of x/r^2, y/r^2 and log r.
        Eigen::Matrix2d d2a, d2b, d2l;
        d2a << (2 * x * x * x - 6 * x * y * y) / r6, (6 * x * x * y - 2 * y * y * y) / r6,
            (6 * x * x * y - 2 * y * y * y) / r6, (6 * x * y * y - 2 * x * x * x) / r6;
        d2b << (6 * x * x * y - 2 * y * y * y) / r6, (6 * x * y * y - 2 * x * x * x) / r6,
            (6 * x * y * y - 2 * x * x * x) / r6, (2 * y * y * y - 6 * x * x * y) / r6;
        d2l << (y * y - x * x) / r4, -2 * x * y / r4, -2 * x * y / r4, (x * x - y * y) / r4;

        Eigen::MatrixXd H = t.Df.transpose() * t.Df;
        H.topLeftCorner<2, 2>() += alpha * (-t.f(0) * d2a - t.f(1) * d2b + t.f(2) * d2l);
        return H / mass;
    }
};

// --- FPU chain ---------------------------------------------------------------

struct FpuModel {
    int pairs;
    std::vector<double> omega;

    int n() const { return 2 * pairs; }

    double energy(const Eigen::VectorXd& y) const {
        const int n2 = n();
        const auto q = y.head(n2);
        const auto p = y.tail(n2);
        double kinetic = 0.5 * p.squaredNorm();
        double stiff = 0.0;
        for (int i = 0; i < pairs; ++i) {
            const double e = q(2 * i + 1) - q(2 * i);
            stiff += omega[i] * omega[i] * e * e;
        }
        double soft = 0.0;
        for (int i = 0; i <= pairs; ++i) {
            const double e = soft_stretch(q, i);
            soft += e * e * e * e;
        }
        return kinetic + 0.25 * stiff + soft;
    }

    Eigen::VectorXd gradient(const Eigen::VectorXd& y) const {
        const int n2 = n();
        const auto q = y.head(n2);
        Eigen::VectorXd g(2 * n2);
        g.tail(n2) = y.tail(n2);
        auto gq = g.head(n2);
        gq.setZero();
        for (int i = 0; i < pairs; ++i) {
            const double f = 0.5 * omega[i] * omega[i] * (q(2 * i + 1) - q(2 * i));
            gq(2 * i + 1) += f;
            gq(2 * i) -= f;
        }
        for (int i = 0; i <= pairs; ++i) {
            const double e = soft_stretch(q, i);
            const double f = 4.0 * e * e * e;
            // Soft spring i joins q_{2i} (left) and q_{2i+1} (right), 1-based.
            if (i < pairs) gq(2 * i) += f;
            if (i > 0) gq(2 * i - 1) -= f;
        }
        return g;
    }

    Eigen::MatrixXd hessian(const Eigen::VectorXd& y) const {
        const int n2 = n();
        const auto q = y.head(n2);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * n2, 2 * n2);
        H.bottomRightCorner(n2, n2).setIdentity();
        auto add_spring = [&H](int a, int b, double k) {
            H(a, a) += k;
            H(b, b) += k;
            H(a, b) -= k;
            H(b, a) -= k;
        };
        for (int i = 0; i < pairs; ++i) add_spring(2 * i, 2 * i + 1, 0.5 * omega[i] * omega[i]);
        for (int i = 0; i <= pairs; ++i) {
            const double e = soft_stretch(q, i);
            const double k = 12.0 * e * e;
            if (i > 0 && i < pairs) {
                add_spring(2 * i - 1, 2 * i, k);
            } else if (i == 0) {
                H(0, 0) += k;
            } else {
                H(n2 - 1, n2 - 1) += k;
            }
        }
        return H;
    }

    // q_{2i+1} - q_{2i} (1-based) with q_0 = q_{2 pairs + 1} = 0.
    template <class Q>
    double soft_stretch(const Q& q, int i) const {
        const double left = i == 0 ? 0.0 : q(2 * i - 1);
        const double right = i == pairs ? 0.0 : q(2 * i);
        return right - left;
    }
};

}  // namespace

HamiltonianSystem charged_particle(const ChargedParticleParameters& params) {
    if (!(params.mass > 0.0)) throw std::invalid_argument("charged_particle: mass must be positive");
    auto model = std::make_shared<const ChargedParticleModel>(
        ChargedParticleModel{params.mass, params.charge * params.field});
    Eigen::VectorXd y0(6);
    y0 << 0.5, 10.0, 0.0, -0.1, -0.3, 0.0;
    return HamiltonianSystem(
        "charged-particle", 3, [model](const Eigen::VectorXd& y) { return model->energy(y); },
        [model](const Eigen::VectorXd& y) { return model->gradient(y); },
        [model](const Eigen::VectorXd& y) { return model->hessian(y); }, std::move(y0), false);
}

HamiltonianSystem fpu_modified(const FpuParameters& params) {
    if (params.pairs < 1) throw std::invalid_argument("fpu_modified: need at least one pair");
    FpuModel m{params.pairs, params.omega};
    if (m.omega.empty()) {
        m.omega.assign(params.pairs, 10.0);
        if (params.pairs == 7) m.omega[3] = 1e4;
    }
    if (static_cast<int>(m.omega.size()) != params.pairs) {
        throw std::invalid_argument("fpu_modified: one frequency per pair is required");
    }
    auto model = std::make_shared<const FpuModel>(std::move(m));
    const int n2 = 2 * params.pairs;
    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(2 * n2);
    for (int i = 0; i < n2; ++i) y0(i) = static_cast<double>(i) / (n2 - 1);
    return HamiltonianSystem(
        "fpu", n2, [model](const Eigen::VectorXd& y) { return model->energy(y); },
        [model](const Eigen::VectorXd& y) { return model->gradient(y); },
        [model](const Eigen::VectorXd& y) { return model->hessian(y); }, std::move(y0), true);
}

HamiltonianSystem harmonic_oscillator(double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("harmonic_oscillator: omega must be positive");
    const double w2 = omega * omega;
    Eigen::VectorXd y0(2);
    y0 << 1.0, 0.0;
    return HamiltonianSystem(
        "harmonic", 1,
        [w2](const Eigen::VectorXd& y) { return 0.5 * (y(1) * y(1) + w2 * y(0) * y(0)); },
        [w2](const Eigen::VectorXd& y) {
            Eigen::VectorXd g(2);
            g << w2 * y(0), y(1);
            return g;
        },
        [w2](const Eigen::VectorXd&) {
            Eigen::MatrixXd H(2, 2);
            H << w2, 0.0, 0.0, 1.0;
            return H;
        },
        std::move(y0), true);
}

}  // namespace hbvm
