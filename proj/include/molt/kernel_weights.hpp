#pragma once

/// Exponential moment integrals and the quadrature weight families built on
/// them: compact-Simpson cell weights for the spatial convolution and the
/// temporal weights of the 1D outflow recurrence.

namespace molt {

/// Time-discretization parameters shared by every solver.
///
/// `beta` is the dimensionless averaging parameter of the implicit scheme;
/// the scheme is A-stable for 0 < beta <= 2. `alpha = beta / (c dt)` is the
/// modified Helmholtz parameter (units 1/length).
struct SchemeParams {
  double beta = 2.0;
  double c = 1.0;
  double dt = 0.0;

  SchemeParams() = default;
  SchemeParams(double beta_, double c_, double dt_);

  double alpha() const { return beta / (c * dt); }
};

/// Cell weights for one cell of dimensionless width nu = alpha*h.
///
/// With d = exp(-nu), the local integral nu * int_0^1 p(z) exp(-nu z) dz of
/// the quadratic interpolant p(z) = (1-z)u_0 + z u_1 + (z^2-z)/2 h^2 u''
/// equals P u_0 + Q u_1 + R h^2 u''.
struct ConvWeights {
  double nu = 0.0;
  double d = 1.0;
  double P = 0.0;
  double Q = 0.0;
  double R = 0.0;
};

/// Temporal weights for the outflow recurrence at one boundary.
struct OutflowWeights {
  double beta = 0.0;
  double gamma0 = 0.0;  // weight of u^{n+1}
  double gamma1 = 0.0;  // weight of u^n
  double gamma2 = 0.0;  // weight of u^{n-1}
  double Gamma0 = 0.0;
  double Gamma1 = 0.0;
  double Gamma2 = 0.0;
};

inline constexpr int kMaxMoment = 3;

/// E_m(nu) = nu * int_0^1 z^m/m! exp(-nu z) dz for m in [0, 3], nu > 0.
/// Throws std::domain_error outside that range.
double exp_int(int m, double nu);

/// Compact-Simpson weights for a cell of width nu. Throws std::domain_error
/// for nu <= 0.
ConvWeights simpson_weights(double nu);

/// Outflow weights for the quadratic-in-time boundary interpolant.
/// Throws std::domain_error for beta <= 0.
OutflowWeights outflow_weights(double beta);

}  // namespace molt
