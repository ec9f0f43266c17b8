#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "molt/kernel_weights.hpp"

namespace molt {

enum class BoundaryKind { dirichlet, neumann, periodic, outflow, transmission };

const char* to_string(BoundaryKind kind);
/// Parses "dirichlet", "neumann", ...; throws std::invalid_argument.
BoundaryKind boundary_kind_from_string(const std::string& name);

/// Coefficients of the homogeneous solution A exp(-alpha(x-a)) + B exp(-alpha(b-x)).
struct HomogeneousCoeffs {
  double A = 0.0;
  double B = 0.0;
};

/// Boundary data at t^{n-1}, t^n, t^{n+1}.
struct TimeLevels {
  double prev = 0.0;
  double curr = 0.0;
  double next = 0.0;
};

/// Time history of the outflow coefficients, A^{n-1} and B^{n-1}.
struct OutflowState {
  double A_prev = 0.0;
  double B_prev = 0.0;
};

/// Data for one end of a line.
struct EndCondition {
  BoundaryKind kind = BoundaryKind::dirichlet;
  std::function<double(double)> data;  // U(t) or V(t); empty means homogeneous
  double transmission = 0.0;           // externally supplied A or B
};

/// Boundary conditions for a 1D line. Periodic must be set on both ends.
struct BCSpec {
  EndCondition left;
  EndCondition right;

  static BCSpec homogeneous(BoundaryKind kind) { return {{kind, {}, 0.0}, {kind, {}, 0.0}}; }
  void validate() const;
};

/// Inputs to the closures that are common to every boundary kind.
struct ClosureInputs {
  double I_a = 0.0;  // particular solution at x = a (sources included)
  double I_b = 0.0;  // ... at x = b
  double mu = 0.0;   // exp(-alpha (b - a))
};

/// Endpoint values of u needed by the outflow closure.
struct OutflowEndValues {
  double u_a = 0.0, u_prev_a = 0.0;
  double u_b = 0.0, u_prev_b = 0.0;
};

HomogeneousCoeffs dirichlet_coeffs(const ClosureInputs& in, const TimeLevels& U_left,
                                   const TimeLevels& U_right, double beta);
HomogeneousCoeffs neumann_coeffs(const ClosureInputs& in, const TimeLevels& V_left,
                                 const TimeLevels& V_right, double beta, double alpha);
HomogeneousCoeffs periodic_coeffs(const ClosureInputs& in);

struct OutflowResult {
  HomogeneousCoeffs coeffs;
  OutflowState next;
};
OutflowResult outflow_coeffs(const ClosureInputs& in, const OutflowEndValues& ends,
                             const OutflowState& state, const OutflowWeights& ow);

/// One row of the 2x2 system  cA * A + cB * B = rhs  contributed by an end.
struct ClosureRow {
  double cA = 0.0;
  double cB = 0.0;
  double rhs = 0.0;
};

/// Per-end rows. The left row constrains w (or w') at x = a, the right row at x = b.
ClosureRow dirichlet_row_left(double w_a, double mu);
ClosureRow dirichlet_row_right(double w_b, double mu);
ClosureRow neumann_row_left(double w_a, double mu);
ClosureRow neumann_row_right(double w_b, double mu);
ClosureRow outflow_row_left(double w_a_out, double mu, const OutflowWeights& ow);
ClosureRow outflow_row_right(double w_b_out, double mu, const OutflowWeights& ow);
ClosureRow transmission_row_left(double A);
ClosureRow transmission_row_right(double B);

/// Solves the two rows; throws std::runtime_error when singular.
HomogeneousCoeffs solve_rows(const ClosureRow& left, const ClosureRow& right);

/// w^D for one end: I - (2/beta^2)(U^{n+1} + (beta^2-2) U^n + U^{n-1}).
double dirichlet_data_term(double I_end, const TimeLevels& U, double beta);
/// w^N at the left end; the right end flips the sign of the data term.
double neumann_data_term_left(double I_a, const TimeLevels& V, double beta, double alpha);
double neumann_data_term_right(double I_b, const TimeLevels& V, double beta, double alpha);
/// w^Out for one end.
double outflow_data_term(double I_end, double u_end, double u_prev_end, double coeff_prev,
                         const OutflowWeights& ow);

/// Throws std::invalid_argument when (1 - Gamma0)^2 == (mu Gamma0)^2.
void check_outflow_solvable(const OutflowWeights& ow, double mu);

}  // namespace molt

namespace molt {

/// Time context for a closure evaluated during the step t^n -> t^{n+1}.
struct ClosureContext {
  double beta = 2.0;
  double alpha = 1.0;
  double t = 0.0;   // t^n
  double dt = 0.0;
};

/// Closes a line for any combination of end conditions. Equal Dirichlet,
/// Neumann or outflow ends use the closed-form solutions above; mixed ends
/// assemble one row per end. Outflow ends advance `state`.
HomogeneousCoeffs apply_closure(const BCSpec& bc, const ClosureInputs& in, const ClosureContext& ctx,
                                const OutflowEndValues& ends, OutflowState& state);

}  // namespace molt
