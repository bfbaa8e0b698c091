#include "opspread/spreading.hpp"

#include <cmath>
#include <sstream>

#include "opspread/errors.hpp"
#include "opspread/random.hpp"
#include "opspread/textio.hpp"

namespace opspread {

namespace {

// ----- sup_commutator internals ---------------------------------------------

// Objective f(O) = ‖[u_A ⊗ I, τ†(I ⊗ O)]‖ over receiver observables. For a
// single-Kraus (unitary) channel U the norm equals ‖[W, I ⊗ O]‖ with
// W = U (u_A ⊗ I) U† precomputed once, which turns every evaluation into
// blockwise d_b-sized products instead of full-dimension Kraus sums.
struct SupObjective {
  const KrausChannel& ch;
  int d_a;
  int d_b;
  Matrix a;        // u_A ⊗ I
  bool unitary_path = false;
  Matrix w;        // U (u_A ⊗ I) U†

  void init() {
    if (ch.kraus_ops().size() == 1) {
      unitary_path = true;
      const Matrix& u = ch.kraus_ops().front();
      w = u * a * u.adjoint();
    }
  }

  Matrix commutator(const Matrix& o_b) const {
    if (unitary_path) {
      // (I⊗O)W - W(I⊗O), assembled block by block
      Matrix out(ch.dim(), ch.dim());
      for (int ra = 0; ra < d_a; ++ra) {
        for (int ca = 0; ca < d_a; ++ca) {
          const auto blk = w.block(static_cast<Eigen::Index>(ra) * d_b,
                                   static_cast<Eigen::Index>(ca) * d_b, d_b, d_b);
          out.block(static_cast<Eigen::Index>(ra) * d_b,
                    static_cast<Eigen::Index>(ca) * d_b, d_b, d_b) =
              o_b * blk - blk * o_b;
        }
      }
      return out;
    }
    const Matrix img = adjoint_apply(ch, kron(Matrix::Identity(d_a, d_a), o_b));
    return a * img - img * a;
  }

  double value(const Matrix& o_b) const { return operator_norm(commutator(o_b)); }

  // linearized-gain matrix G: maximizing Re Tr(O G) over unitary O gives the
  // next ascent iterate. Generic path: G = Tr_A[τ(|y⟩⟨x| a - a |y⟩⟨x|)];
  // unitary path: same with a -> W and τ -> id, evaluated through the rank-2
  // structure.
  Matrix gain(const Eigen::VectorXcd& left, const Eigen::VectorXcd& right) const {
    if (unitary_path) {
      // matches the (I⊗O)W - W(I⊗O) convention used by commutator()
      const Eigen::VectorXcd wy = w * right;
      const Eigen::VectorXcd wdx = w.adjoint() * left;
      return rank1_trace_a(wy, left) - rank1_trace_a(right, wdx);
    }
    const Matrix yx = right * left.adjoint();
    const Matrix r = yx * a - a * yx;
    Matrix tau_r = Matrix::Zero(ch.dim(), ch.dim());
    for (const Matrix& k : ch.kraus_ops()) tau_r += k * r * k.adjoint();
    return partial_trace(tau_r, {d_a, d_b}, {1});
  }

 private:
  // Tr_A(|u⟩⟨v|) for vectors on A ⊗ B: out(b, b') = Σ_a u(a,b) conj(v(a,b'))
  Matrix rank1_trace_a(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const {
    Matrix out = Matrix::Zero(d_b, d_b);
    for (int aa = 0; aa < d_a; ++aa) {
      const auto ublk = u.segment(static_cast<Eigen::Index>(aa) * d_b, d_b);
      const auto vblk = v.segment(static_cast<Eigen::Index>(aa) * d_b, d_b);
      out.noalias() += ublk * vblk.adjoint();
    }
    return out;
  }
};

// top singular pair of m by power iteration on m†m, warm-started with the
// previous right vector. Returns |x†my|, a certified lower bound on ‖m‖,
// which is all the ascent loop needs.
double top_singular_pair(const Matrix& m, Rng& rng, Eigen::VectorXcd& left,
                         Eigen::VectorXcd& right) {
  Eigen::VectorXcd y = right;
  if (y.size() != m.cols() || y.norm() == 0.0) {
    y.resize(m.cols());
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = complex_normal(rng);
    y.normalize();
  }
  double nm = 0.0;
  for (int iter = 0; iter < 60; ++iter) {
    const Eigen::VectorXcd my = m * y;
    const double next = my.norm();
    if (next == 0.0) break;
    y = m.adjoint() * my;
    y.normalize();
    if (std::abs(next - nm) <= 1e-11 * std::max(1.0, next)) {
      nm = next;
      break;
    }
    nm = next;
  }
  right = y;
  left = m * y;
  const double lnorm = left.norm();
  if (lnorm > 0.0) {
    left /= lnorm;
  } else {
    left = Eigen::VectorXcd::Zero(m.rows());
    left(0) = 1.0;
  }
  return lnorm;
}

// polar step: the best unitary for the linearized gain is O = V U† for
// G = U Σ V†
Matrix polar_maximizer(const Matrix& g) {
  if (g.rows() <= 64) {
    Eigen::JacobiSVD<Matrix> s(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return s.matrixV() * s.matrixU().adjoint();
  }
  Eigen::BDCSVD<Matrix> s(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return s.matrixV() * s.matrixU().adjoint();
}

struct AscentCandidate {
  Matrix witness;
  double steer_value;  // power-iteration lower bound used for steering
};

// monotone ascent from a unitary start; the returned candidate's exact norm
// is evaluated once by the caller
AscentCandidate polar_ascent(const SupObjective& obj, Matrix o, Rng& rng,
                             int max_sweeps, double break_rel) {
  Eigen::VectorXcd left, right;
  double current = top_singular_pair(obj.commutator(o), rng, left, right);
  Matrix witness = o;
  double best = current;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    Matrix next = polar_maximizer(obj.gain(left, right));
    const double value = top_singular_pair(obj.commutator(next), rng, left, right);
    if (value > best) {
      best = value;
      witness = next;
    }
    if (value <= current + 1e-13 + break_rel * std::abs(value)) break;
    current = value;
    o = std::move(next);
  }
  return AscentCandidate{std::move(witness), best};
}

}  // namespace

Matrix pauli(char axis) {
  Matrix m(2, 2);
  switch (axis) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw DomainError(std::string("pauli: unknown axis '") + axis + "'");
  }
  return m;
}

Matrix site_operator(const Matrix& op, int site, int n_sites) {
  if (site < 0 || site >= n_sites) throw DimensionError("site_operator: site out of range");
  if (op.rows() != 2 || op.cols() != 2) {
    throw DimensionError("site_operator: expected a single-qubit operator");
  }
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < n_sites; ++s) {
    out = kron(out, s == site ? op : Matrix::Identity(2, 2));
  }
  return out;
}

double commutator_norm(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("commutator_norm: operands must be square with equal dims");
  }
  return operator_norm(a * b - b * a);
}

Matrix build_hamiltonian(const SpinChainModel& m) {
  if (m.n_sites < 2) throw DimensionError("build_hamiltonian: need n_sites >= 2");
  if (m.n_sites > m.max_sites) {
    std::ostringstream os;
    os << "build_hamiltonian: n_sites = " << m.n_sites << " exceeds dense cap "
       << m.max_sites;
    throw DimensionError(os.str());
  }
  const long long dim = 1LL << m.n_sites;
  Matrix h = Matrix::Zero(dim, dim);
  const Matrix z = pauli('Z');
  const Matrix x = pauli('X');
  const int bonds = (m.boundary == SpinChainModel::Boundary::periodic) ? m.n_sites
                                                                       : m.n_sites - 1;
  for (int b = 0; b < bonds; ++b) {
    const int i = b;
    const int j = (b + 1) % m.n_sites;
    h -= m.coupling * (site_operator(z, i, m.n_sites) * site_operator(z, j, m.n_sites));
  }
  for (int i = 0; i < m.n_sites; ++i) {
    h -= m.field * site_operator(x, i, m.n_sites);
  }
  return h;
}

Matrix evolve_operator(const Matrix& h, const Matrix& o, double t) {
  const Matrix u = evolution_unitary(h, t);
  if (o.rows() != u.rows() || o.cols() != u.cols()) {
    throw DimensionError("evolve_operator: operator/hamiltonian dims differ");
  }
  if (t == 0.0) return o;
  return u.adjoint() * o * u;  // e^{iht} o e^{-iht}
}

Matrix evolve_operator_series(const Matrix& h, const Matrix& o, double t,
                              int max_order) {
  if (h.rows() != h.cols() || o.rows() != o.cols() || h.rows() != o.rows()) {
    throw DimensionError("evolve_operator_series: operands must be square with equal dims");
  }
  if (t == 0.0) return o;
  Matrix sum = o;
  Matrix p = o;  // ad_h^k(o), unscaled so exact zero patterns survive
  Complex coef(1.0, 0.0);
  for (int k = 1; k <= max_order; ++k) {
    p = h * p - p * h;
    coef *= Complex(0.0, t) / static_cast<double>(k);
    const double pnorm = p.cwiseAbs().maxCoeff();
    if (!std::isfinite(pnorm)) {
      throw DomainError("evolve_operator_series: nested commutators overflow; use evolve_operator");
    }
    sum += coef * p;
    if (std::abs(coef) * pnorm < 1e-30 && k >= 8) break;
  }
  return sum;
}

LightconeGrid lightcone_scan(const SpinChainModel& m, const Matrix& o_a,
                             const Matrix& o_b, const std::vector<double>& times) {
  if (std::abs(operator_norm(o_a) - 1.0) > 1e-10 ||
      std::abs(operator_norm(o_b) - 1.0) > 1e-10) {
    throw DomainError("lightcone_scan: observables must have unit operator norm");
  }
  const Matrix h = build_hamiltonian(m);
  const Matrix a0 = site_operator(o_a, 0, m.n_sites);

  LightconeGrid grid;
  grid.times = times;
  for (int d = 1; d < m.n_sites; ++d) grid.distances.push_back(d);
  grid.values = RealMatrix::Zero(m.n_sites - 1, static_cast<Eigen::Index>(times.size()));

  // series evolution keeps the exact locality zeros at low order; fall back
  // to the spectral path once per-entry Taylor terms grow enough to cost
  // more than ~1e-12 absolute error
  const double rate = 2.0 * operator_norm(h);
  std::vector<Matrix> site_b;
  for (int d = 1; d < m.n_sites; ++d) {
    site_b.push_back(site_operator(o_b, d, m.n_sites));
  }
  for (size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const Matrix at = (std::abs(t) * rate <= 12.0) ? evolve_operator_series(h, a0, t)
                                                   : evolve_operator(h, a0, t);
    for (int d = 1; d < m.n_sites; ++d) {
      const Matrix& b = site_b[static_cast<size_t>(d - 1)];
      grid.values(d - 1, static_cast<Eigen::Index>(k)) = operator_norm(at * b - b * at);
    }
  }
  return grid;
}

std::string to_csv(const LightconeGrid& grid) {
  std::ostringstream os;
  os << "t,d,commutator_norm\n";
  for (size_t k = 0; k < grid.times.size(); ++k) {
    for (size_t d = 0; d < grid.distances.size(); ++d) {
      os << format_double(grid.times[k]) << "," << grid.distances[d] << ","
         << format_double(grid.values(static_cast<Eigen::Index>(d),
                                      static_cast<Eigen::Index>(k)))
         << "\n";
    }
  }
  return os.str();
}

SupEstimate sup_commutator(const KrausChannel& ch, const Matrix& u_a, int d_a, int d_b,
                           const OptimizerConfig& opt,
                           const std::vector<Matrix>& warm_starts) {
  validate(opt);
  if (static_cast<long long>(d_a) * d_b != ch.dim()) {
    throw DimensionError("sup_commutator: subsystem dims do not factor the channel dim");
  }
  if (!is_unitary(u_a, kHermTol)) {
    throw UnitarityError("sup_commutator: u_a must be unitary");
  }
  // a scalar encoding commutes with everything; no search needed
  if ((u_a - u_a(0, 0) * Matrix::Identity(d_a, d_a)).cwiseAbs().maxCoeff() == 0.0) {
    return SupEstimate{0.0, Matrix::Identity(d_b, d_b)};
  }
  SupObjective obj{ch, d_a, d_b, kron(u_a, Matrix::Identity(d_b, d_b))};
  obj.init();

  double best = 0.0;
  Matrix best_witness = Matrix::Identity(d_b, d_b);

  Rng power_rng(derive_seed(opt.seed, 0x706f776572ULL));  // shared by power iterations
  // deep polish is cheap at desk dims; at chain scale the warm starts already
  // certify the bound and only a short polish pays for itself
  const bool large = ch.dim() > 64;
  const int ascent_sweeps = large ? 12 : 60;
  const double break_rel = large ? 1e-8 : 1e-10;

  auto consider = [&](Matrix start) {
    AscentCandidate cand =
        polar_ascent(obj, std::move(start), power_rng, ascent_sweeps, break_rel);
    const double exact = obj.value(cand.witness);
    if (exact > best) {
      best = exact;
      best_witness = std::move(cand.witness);
    }
  };

  for (const Matrix& w : warm_starts) {
    if (w.rows() != d_b || w.cols() != d_b) {
      throw DimensionError("sup_commutator: warm start has wrong receiver dim");
    }
    consider(w);
  }

  const int n_params = d_b * d_b;
  const bool use_pattern_search = n_params <= 36;
  for (int r = 0; r < opt.restarts; ++r) {
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(r) + 1));
    Eigen::VectorXd theta(n_params);
    for (int k = 0; k < n_params; ++k) {
      theta(k) = (2.0 * uniform_real(rng) - 1.0) * M_PI;
    }
    if (use_pattern_search) {
      auto objective = [&](const Eigen::VectorXd& th) {
        return obj.value(unitary_from_params(UnitaryParams{d_b, th}));
      };
      const PatternSearchResult res = pattern_search(objective, theta, opt.max_iters,
                                                     opt.init_step, opt.shrink, opt.tol);
      consider(unitary_from_params(UnitaryParams{d_b, res.x}));
    } else {
      consider(haar_unitary(d_b, rng));
    }
  }
  return SupEstimate{best, std::move(best_witness)};
}

double eps_lr(const KrausChannel& ch, const Ensemble& e, int d_a, int d_b,
              const OptimizerConfig& opt,
              const std::vector<std::vector<Matrix>>& warm_starts) {
  if (!warm_starts.empty() && warm_starts.size() != static_cast<size_t>(e.size())) {
    throw DimensionError("eps_lr: warm starts must match the ensemble size");
  }
  double eps = 0.0;
  for (int i = 0; i < e.size(); ++i) {
    OptimizerConfig per_index = opt;
    per_index.seed = derive_seed(opt.seed, static_cast<std::uint64_t>(i) + 0x657073ULL);
    const std::vector<Matrix> warm =
        warm_starts.empty() ? std::vector<Matrix>{} : warm_starts[static_cast<size_t>(i)];
    const SupEstimate est =
        sup_commutator(ch, e.unitaries()[static_cast<size_t>(i)], d_a, d_b, per_index, warm);
    eps = std::max(eps, est.estimate);
  }
  return eps;
}

}  // namespace opspread
