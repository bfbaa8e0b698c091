#pragma once

#include <vector>

#include "opspread/channels.hpp"
#include "opspread/holevo.hpp"
#include "opspread/search.hpp"

namespace opspread {

/// Transverse-field Ising chain H = -J Σ Z_i Z_{i+1} - g Σ X_i.
struct SpinChainModel {
  enum class Boundary { open, periodic };
  int n_sites = 8;
  double coupling = 1.0;  // J
  double field = 1.0;     // g
  Boundary boundary = Boundary::open;
  int max_sites = 10;     // dense-storage cap
};

/// Commutator norms C(d, t) = ‖[O_A(t), O_B at site 1+d]‖ on a grid.
struct LightconeGrid {
  std::vector<double> times;
  std::vector<int> distances;      // 1 .. n_sites-1
  RealMatrix values;               // values(d_index, t_index)
};

Matrix pauli(char axis);  // 'I', 'X', 'Y', 'Z'

/// op acting on `site` (0-based) of an n-qubit register.
Matrix site_operator(const Matrix& op, int site, int n_sites);

/// ‖ab - ba‖ (operator norm).
double commutator_norm(const Matrix& a, const Matrix& b);

Matrix build_hamiltonian(const SpinChainModel& m);

/// e^{iht} o e^{-iht}.
Matrix evolve_operator(const Matrix& h, const Matrix& o, double t);

/// Heisenberg evolution through the nested-commutator series
/// o(t) = Σ (it)^k/k! ad_h^k(o). Exact low-order locality zeros survive in
/// floating point, so far-separated commutators come out orders of magnitude
/// below machine epsilon instead of drowning in rounding noise. Accurate for
/// |t|·(series growth rate) up to a few; callers switch to evolve_operator
/// beyond that.
Matrix evolve_operator_series(const Matrix& h, const Matrix& o, double t,
                              int max_order = 120);

LightconeGrid lightcone_scan(const SpinChainModel& m, const Matrix& o_a,
                             const Matrix& o_b, const std::vector<double>& times);

/// Plot-ready CSV with columns `t, d, commutator_norm`.
std::string to_csv(const LightconeGrid& grid);

struct SupEstimate {
  double estimate;
  Matrix witness;  // unitary O_B attaining the estimate
};

/// Best found value of ‖[u_A ⊗ I, τ†(I ⊗ O_B)]‖ over unitary O_B (the
/// extreme points of the unit operator-norm ball). Runs a multi-restart
/// search: pattern search over exp(iH(θ)) charts at small receiver dims,
/// and a monotone polar-ascent polish from every start. `warm_starts`
/// seeds extra ascents (unit-norm observables, e.g. distinguishability
/// witnesses). The estimate is a certified lower bound of the sup.
SupEstimate sup_commutator(const KrausChannel& ch, const Matrix& u_a, int d_a, int d_b,
                           const OptimizerConfig& opt,
                           const std::vector<Matrix>& warm_starts = {});

/// max over ensemble indices of the sup_commutator estimate; the operational
/// spreading magnitude fed into lr_capacity_bound. `warm_starts[i]` seeds
/// the search for encoding i.
double eps_lr(const KrausChannel& ch, const Ensemble& e, int d_a, int d_b,
              const OptimizerConfig& opt,
              const std::vector<std::vector<Matrix>>& warm_starts = {});

}  // namespace opspread
