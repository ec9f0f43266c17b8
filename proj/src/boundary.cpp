#include "molt/boundary.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace molt {

namespace {

void check_mu(double mu) {
  if (!(mu >= 0.0) || !(mu < 1.0)) {
    throw std::invalid_argument("closure: mu = exp(-alpha(b-a)) must lie in [0, 1)");
  }
}

double sum_levels(const TimeLevels& v, double beta) {
  return v.next + (beta * beta - 2.0) * v.curr + v.prev;
}

}  // namespace

const char* to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::dirichlet: return "dirichlet";
    case BoundaryKind::neumann: return "neumann";
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::outflow: return "outflow";
    case BoundaryKind::transmission: return "transmission";
  }
  return "?";
}

BoundaryKind boundary_kind_from_string(const std::string& name) {
  for (auto k : {BoundaryKind::dirichlet, BoundaryKind::neumann, BoundaryKind::periodic,
                 BoundaryKind::outflow, BoundaryKind::transmission}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown boundary kind '" + name + "'");
}

void BCSpec::validate() const {
  const bool lp = left.kind == BoundaryKind::periodic;
  const bool rp = right.kind == BoundaryKind::periodic;
  if (lp != rp) throw std::invalid_argument("BCSpec: periodic must be imposed on both ends");
  for (const auto* e : {&left, &right}) {
    if (e->kind == BoundaryKind::transmission && !std::isfinite(e->transmission)) {
      throw std::invalid_argument("BCSpec: transmission coefficient must be finite");
    }
  }
}

double dirichlet_data_term(double I_end, const TimeLevels& U, double beta) {
  return I_end - 2.0 / (beta * beta) * sum_levels(U, beta);
}

double neumann_data_term_left(double I_a, const TimeLevels& V, double beta, double alpha) {
  return I_a - 2.0 / (alpha * beta * beta) * sum_levels(V, beta);
}

double neumann_data_term_right(double I_b, const TimeLevels& V, double beta, double alpha) {
  return I_b + 2.0 / (alpha * beta * beta) * sum_levels(V, beta);
}

double outflow_data_term(double I_end, double u_end, double u_prev_end, double coeff_prev,
                         const OutflowWeights& ow) {
  return std::exp(-ow.beta) * coeff_prev + ow.Gamma0 * I_end + ow.Gamma1 * u_end +
         ow.Gamma2 * u_prev_end;
}

HomogeneousCoeffs dirichlet_coeffs(const ClosureInputs& in, const TimeLevels& U_left,
                                   const TimeLevels& U_right, double beta) {
  check_mu(in.mu);
  const double wa = dirichlet_data_term(in.I_a, U_left, beta);
  const double wb = dirichlet_data_term(in.I_b, U_right, beta);
  const double den = 1.0 - in.mu * in.mu;
  return {-(wa - in.mu * wb) / den, -(wb - in.mu * wa) / den};
}

HomogeneousCoeffs neumann_coeffs(const ClosureInputs& in, const TimeLevels& V_left,
                                 const TimeLevels& V_right, double beta, double alpha) {
  check_mu(in.mu);
  const double wa = neumann_data_term_left(in.I_a, V_left, beta, alpha);
  const double wb = neumann_data_term_right(in.I_b, V_right, beta, alpha);
  const double den = 1.0 - in.mu * in.mu;
  return {(wa + in.mu * wb) / den, (wb + in.mu * wa) / den};
}

HomogeneousCoeffs periodic_coeffs(const ClosureInputs& in) {
  check_mu(in.mu);
  return {in.I_b / (1.0 - in.mu), in.I_a / (1.0 - in.mu)};
}

void check_outflow_solvable(const OutflowWeights& ow, double mu) {
  const double g = 1.0 - ow.Gamma0;
  const double det = g * g - (mu * ow.Gamma0) * (mu * ow.Gamma0);
  if (!(std::abs(det) > 1e-14)) {
    throw std::invalid_argument("outflow closure is singular for beta = " + std::to_string(ow.beta));
  }
}

OutflowResult outflow_coeffs(const ClosureInputs& in, const OutflowEndValues& ends,
                             const OutflowState& state, const OutflowWeights& ow) {
  check_mu(in.mu);
  check_outflow_solvable(ow, in.mu);
  const double wa = outflow_data_term(in.I_a, ends.u_a, ends.u_prev_a, state.A_prev, ow);
  const double wb = outflow_data_term(in.I_b, ends.u_b, ends.u_prev_b, state.B_prev, ow);
  const double g = 1.0 - ow.Gamma0;
  const double mg = in.mu * ow.Gamma0;
  const double det = g * g - mg * mg;
  const double A = (g * wa + mg * wb) / det;
  const double B = (g * wb + mg * wa) / det;
  return {{A, B}, {A, B}};
}

ClosureRow dirichlet_row_left(double w_a, double mu) { return {1.0, mu, -w_a}; }
ClosureRow dirichlet_row_right(double w_b, double mu) { return {mu, 1.0, -w_b}; }
ClosureRow neumann_row_left(double w_a, double mu) { return {1.0, -mu, w_a}; }
ClosureRow neumann_row_right(double w_b, double mu) { return {-mu, 1.0, w_b}; }
ClosureRow outflow_row_left(double w_a_out, double mu, const OutflowWeights& ow) {
  return {1.0 - ow.Gamma0, -ow.Gamma0 * mu, w_a_out};
}
ClosureRow outflow_row_right(double w_b_out, double mu, const OutflowWeights& ow) {
  return {-ow.Gamma0 * mu, 1.0 - ow.Gamma0, w_b_out};
}
ClosureRow transmission_row_left(double A) { return {1.0, 0.0, A}; }
ClosureRow transmission_row_right(double B) { return {0.0, 1.0, B}; }

HomogeneousCoeffs solve_rows(const ClosureRow& l, const ClosureRow& r) {
  const double det = l.cA * r.cB - l.cB * r.cA;
  const double scale = std::abs(l.cA * r.cB) + std::abs(l.cB * r.cA);
  if (!(std::abs(det) > 1e-14 * scale)) throw std::runtime_error("closure: singular 2x2 system");
  return {(l.rhs * r.cB - l.cB * r.rhs) / det, (l.cA * r.rhs - l.rhs * r.cA) / det};
}

}  // namespace molt

namespace molt {

namespace {

TimeLevels levels_of(const EndCondition& e, const ClosureContext& ctx) {
  if (!e.data) return {};
  return {e.data(ctx.t - ctx.dt), e.data(ctx.t), e.data(ctx.t + ctx.dt)};
}

}  // namespace

HomogeneousCoeffs apply_closure(const BCSpec& bc, const ClosureInputs& in, const ClosureContext& ctx,
                                const OutflowEndValues& ends, OutflowState& state) {
  const BoundaryKind lk = bc.left.kind;
  const BoundaryKind rk = bc.right.kind;
  if (lk == BoundaryKind::periodic) return periodic_coeffs(in);

  OutflowWeights ow;
  if (lk == BoundaryKind::outflow || rk == BoundaryKind::outflow) ow = outflow_weights(ctx.beta);

  if (lk == rk) {
    switch (lk) {
      case BoundaryKind::dirichlet:
        return dirichlet_coeffs(in, levels_of(bc.left, ctx), levels_of(bc.right, ctx), ctx.beta);
      case BoundaryKind::neumann:
        return neumann_coeffs(in, levels_of(bc.left, ctx), levels_of(bc.right, ctx), ctx.beta,
                              ctx.alpha);
      case BoundaryKind::outflow: {
        const OutflowResult r = outflow_coeffs(in, ends, state, ow);
        state = r.next;
        return r.coeffs;
      }
      default:
        break;
    }
  }

  check_mu(in.mu);
  auto row = [&](const EndCondition& e, bool left) -> ClosureRow {
    const double I_end = left ? in.I_a : in.I_b;
    switch (e.kind) {
      case BoundaryKind::dirichlet: {
        const double w = dirichlet_data_term(I_end, levels_of(e, ctx), ctx.beta);
        return left ? dirichlet_row_left(w, in.mu) : dirichlet_row_right(w, in.mu);
      }
      case BoundaryKind::neumann: {
        const TimeLevels v = levels_of(e, ctx);
        return left ? neumann_row_left(neumann_data_term_left(I_end, v, ctx.beta, ctx.alpha), in.mu)
                    : neumann_row_right(neumann_data_term_right(I_end, v, ctx.beta, ctx.alpha), in.mu);
      }
      case BoundaryKind::outflow: {
        const double w = left ? outflow_data_term(I_end, ends.u_a, ends.u_prev_a, state.A_prev, ow)
                              : outflow_data_term(I_end, ends.u_b, ends.u_prev_b, state.B_prev, ow);
        return left ? outflow_row_left(w, in.mu, ow) : outflow_row_right(w, in.mu, ow);
      }
      case BoundaryKind::transmission:
        return left ? transmission_row_left(e.transmission) : transmission_row_right(e.transmission);
      case BoundaryKind::periodic:
        break;
    }
    throw std::invalid_argument("closure: periodic end paired with a non-periodic end");
  };
  const HomogeneousCoeffs c = solve_rows(row(bc.left, true), row(bc.right, false));
  if (lk == BoundaryKind::outflow) state.A_prev = c.A;
  if (rk == BoundaryKind::outflow) state.B_prev = c.B;
  return c;
}

}  // namespace molt
