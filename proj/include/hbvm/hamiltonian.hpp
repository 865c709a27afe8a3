#pragma once

// Hamiltonian systems y' = J grad H(y) with y = (q, p), q, p in R^m, and
// J = [0 I; -I 0]. Every system stores its state as all positions followed
// by all momenta.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hbvm {

/// Canonical symplectic matrix applied blockwise, never materialized.
struct SymplecticJ {
    int m = 0;

    /// J v = (v_p, -v_q).
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    /// J M, row blocks swapped with a sign.
    Eigen::MatrixXd apply(const Eigen::MatrixXd& M) const;
};

class HamiltonianSystem {
public:
    using Energy = std::function<double(const Eigen::VectorXd&)>;
    using Gradient = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
    using Hessian = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

    HamiltonianSystem(std::string label, int m, Energy energy, Gradient gradient, Hessian hessian,
                      Eigen::VectorXd y0, bool separable);

    int half_dimension() const { return m_; }
    int dimension() const { return 2 * m_; }
    const std::string& label() const { return label_; }
    const Eigen::VectorXd& initial_state() const { return y0_; }
    /// H = T(p) + V(q).
    bool separable() const { return separable_; }
    SymplecticJ J() const { return {m_}; }

    double energy(const Eigen::VectorXd& y) const { return energy_(y); }
    Eigen::VectorXd gradient(const Eigen::VectorXd& y) const { return gradient_(y); }
    Eigen::MatrixXd hessian(const Eigen::VectorXd& y) const { return hessian_(y); }

private:
    std::string label_;
    int m_;
    Energy energy_;
    Gradient gradient_;
    Hessian hessian_;
    Eigen::VectorXd y0_;
    bool separable_;
};

/// J grad H(y).
Eigen::VectorXd vector_field(const HamiltonianSystem& system, const Eigen::VectorXd& y);

struct ChargedParticleParameters {
    double mass = 1.0;
    double charge = -1.0;
    double field = 1.0;
};

/// Charged particle in a magnetic field with Biot-Savart potential,
/// state (x, y, z, x', y', z'), starting at (0.5, 10, 0, -0.1, -0.3, 0).
/// Evaluators throw std::domain_error within 1e-8 of the z-axis.
HamiltonianSystem charged_particle(const ChargedParticleParameters& params = {});

struct FpuParameters {
    int pairs = 7;
    /// Stiff spring frequencies, one per pair; empty selects 10,10,10,1e4,10,10,10.
    std::vector<double> omega;
};

/// Fermi-Pasta-Ulam chain of alternating stiff linear and soft cubic springs,
/// dimension 4 * pairs, starting at q_i = (i-1)/(2 pairs - 1), p = 0.
HamiltonianSystem fpu_modified(const FpuParameters& params = {});

/// H = (p^2 + omega^2 q^2) / 2 from (q, p) = (1, 0).
HamiltonianSystem harmonic_oscillator(double omega);

}  // namespace hbvm
