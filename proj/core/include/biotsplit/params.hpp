#pragma once

namespace biotsplit {

/// User-facing parameter set, validated by PhysParams.
struct ParameterSet {
    double youngs_modulus = 1.0;
    double poisson_ratio = 0.3;
    double biot_alpha = 1.0;
    double storage_c0 = 1.0;
    double conductivity = 1.0;
    double dt = 1e-3;
    double final_time = 0.01;
};

/// Validated material and time-stepping parameters with the Lame constants
/// derived from (E, nu). Fluid density times gravity is fixed to zero.
///
/// Construction throws std::invalid_argument naming the offending value
/// unless 0 < nu < 0.5, E > 0, alpha > 0, c0 >= 0, K > 0, dt > 0, T > 0.
class PhysParams {
public:
    explicit PhysParams(const ParameterSet& set);
    PhysParams() : PhysParams(ParameterSet{}) {}

    [[nodiscard]] const ParameterSet& input() const noexcept { return set_; }
    [[nodiscard]] double E() const noexcept { return set_.youngs_modulus; }
    [[nodiscard]] double nu() const noexcept { return set_.poisson_ratio; }
    [[nodiscard]] double alpha() const noexcept { return set_.biot_alpha; }
    [[nodiscard]] double c0() const noexcept { return set_.storage_c0; }
    [[nodiscard]] double K() const noexcept { return set_.conductivity; }
    [[nodiscard]] double dt() const noexcept { return set_.dt; }
    [[nodiscard]] double T() const noexcept { return set_.final_time; }
    [[nodiscard]] double mu() const noexcept { return mu_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }

    /// c0 + alpha^2 / lambda, the coefficient of the pressure mass term.
    [[nodiscard]] double storage() const noexcept { return set_.storage_c0 + set_.biot_alpha * set_.biot_alpha / lambda_; }
    /// (alpha^2 / lambda) / (c0 + alpha^2 / lambda): per-iteration bound on
    /// the total-pressure error of the iterative splitting. Equals 1 when c0 = 0.
    [[nodiscard]] double contraction_factor() const noexcept;
    /// Number of time steps, round(T / dt). Throws if T is not a whole
    /// multiple of dt within 1e-9 relative.
    [[nodiscard]] int num_steps() const;

    [[nodiscard]] PhysParams with_dt(double dt) const;

private:
    ParameterSet set_;
    double mu_ = 0.0;
    double lambda_ = 0.0;
};

}  // namespace biotsplit
