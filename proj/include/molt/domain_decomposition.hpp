#pragma once

#include <functional>
#include <span>
#include <vector>

#include "molt/boundary.hpp"
#include "molt/convolution.hpp"
#include "molt/parallel.hpp"
#include "molt/stepper1d.hpp"

namespace molt {

/// How the second-derivative stencil is formed at an interface node.
enum class InterfaceStencil {
  one_sided,  // only scalars cross interfaces; interface nodes use one-sided stencils
  halo        // one neighbour value per side is exchanged; equals the monolithic stencil
};

const char* to_string(InterfaceStencil s);
InterfaceStencil interface_stencil_from_string(const std::string& name);

/// One piece [a_m, b_m] of a partitioned line.
struct Subdomain {
  int index = 0;
  LineKernel kernel;
  WaveState1D state;
  SourceSpec sources;    // point and soft sources owned by this piece
  double JL_out = 0.0;   // I_m[u](b_m), sent to the coarse mesh
  double JR_out = 0.0;   // I_m[u](a_m)
  double A = 0.0;        // received homogeneous coefficients
  double B = 0.0;
  HaloValues halo;
  std::vector<double> v, I, next;

  Subdomain(int m, LineKernel k);
  const Grid1D& grid() const { return kernel.grid(); }
};

/// Interface positions X_0 < ... < X_M with the coarse characteristics.
struct CoarseMesh {
  std::vector<double> X;
  std::vector<double> nu;     // alpha (X_{m+1} - X_m)
  std::vector<double> decay;  // exp(-nu_m)
  std::vector<double> IL;     // IL[0] == 0
  std::vector<double> IR;     // IR[M] == 0

  CoarseMesh() = default;
  CoarseMesh(std::vector<double> interfaces, double alpha);
  std::size_t size() const { return nu.size(); }
  double mu() const;
};

struct LocalSweep {
  double JL_out = 0.0;
  double JR_out = 0.0;
  ConvResult conv;
};

/// Local convolution of one piece; reports its values at b_m and a_m.
LocalSweep local_sweep(std::span<const double> u, const LineKernel& kernel, const HaloValues& halo = {});

/// Closure for the global line given I(a), I(b) and mu.
using GlobalClosure = std::function<HomogeneousCoeffs(const ClosureInputs&)>;

/// Runs the coarse recurrences and returns (A_m, B_m) for every piece.
/// `right_vals[m]` = I_m(b_m), `left_vals[m]` = I_m(a_m). Throws
/// std::invalid_argument when a value is missing or not finite.
std::vector<HomogeneousCoeffs> coarse_assemble(CoarseMesh& coarse, std::span<const double> right_vals,
                                               std::span<const double> left_vals,
                                               const GlobalClosure& closure);

/// A line split into M pieces advanced with fork-join phases: parallel local
/// sweeps, a coarse solve on one thread, parallel local updates.
class DDSolver {
 public:
  DDSolver(std::vector<Grid1D> grids, SchemeParams params, BCSpec bc, SourceSpec sources = {},
           InterfaceStencil mode = InterfaceStencil::one_sided, ExecPolicy policy = ExecPolicy::parallel);

  std::size_t num_subdomains() const { return subs_.size(); }
  const Subdomain& subdomain(std::size_t m) const { return subs_[m]; }
  const CoarseMesh& coarse() const { return coarse_; }
  const SchemeParams& params() const { return params_; }

  /// Union of the piece nodes with interface nodes counted once.
  const Grid1D& global_grid() const { return global_; }
  double t() const { return subs_.front().state.t; }
  long n() const { return subs_.front().state.n; }

  /// Initializes every piece from global nodal arrays (length global_grid().num_nodes()).
  void set_state(const WaveState1D& global);
  /// Taylor start on each piece; `f_xx` is optional.
  void init(const std::function<double(double)>& f, const std::function<double(double)>& g,
            const std::function<double(double)>& f_xx = {});
  WaveState1D gather() const;

  void advance();
  void set_policy(ExecPolicy p) { policy_ = p; }

 private:
  void sweep(Subdomain& s);
  void update(Subdomain& s);
  void load_halos();

  std::vector<Subdomain> subs_;
  CoarseMesh coarse_;
  Grid1D global_;
  SchemeParams params_;
  BCSpec bc_;
  SourceSpec smooth_only_;
  InterfaceStencil mode_;
  ExecPolicy policy_;
  std::optional<OutflowState> outflow_;
  std::vector<double> right_vals_, left_vals_;
};

}  // namespace molt
