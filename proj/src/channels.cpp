#include "opspread/channels.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "opspread/errors.hpp"
#include "opspread/random.hpp"
#include "opspread/textio.hpp"

namespace opspread {

KrausChannel KrausChannel::from_kraus(std::vector<Matrix> ops,
                                      std::optional<std::pair<int, int>> subsystem_dims,
                                      double completeness_tol) {
  if (ops.empty()) throw DimensionError("from_kraus: need at least one Kraus operator");
  const Eigen::Index d = ops.front().rows();
  if (d == 0) throw DimensionError("from_kraus: empty Kraus operator");
  for (const Matrix& k : ops) {
    if (k.rows() != d || k.cols() != d) {
      throw DimensionError("from_kraus: Kraus operators must be square with equal dims");
    }
    require_finite(k, "from_kraus");
  }
  Matrix gram = Matrix::Zero(d, d);
  for (const Matrix& k : ops) gram += k.adjoint() * k;
  const double dev = operator_norm(gram - Matrix::Identity(d, d));
  if (dev > completeness_tol) {
    std::ostringstream os;
    os << "from_kraus: completeness violation ‖ΣK†K - I‖ = " << dev;
    throw CompletenessError(os.str());
  }
  if (subsystem_dims) {
    const auto [da, db] = *subsystem_dims;
    if (da < 1 || db < 1 || static_cast<Eigen::Index>(da) * db != d) {
      throw DimensionError("from_kraus: subsystem dims do not factor the channel dim");
    }
  }
  return KrausChannel(std::move(ops), subsystem_dims, static_cast<int>(d));
}

KrausChannel KrausChannel::with_subsystems(int d_a, int d_b) const {
  return from_kraus(ops_, std::make_pair(d_a, d_b));
}

KrausChannel unitary_channel(const Matrix& u,
                             std::optional<std::pair<int, int>> subsystem_dims,
                             double tol) {
  if (!is_unitary(u, tol)) {
    throw UnitarityError("unitary_channel: input is not unitary within tolerance");
  }
  return KrausChannel::from_kraus({u}, subsystem_dims);
}

KrausChannel product_channel(const KrausChannel& tau_a, const KrausChannel& tau_b) {
  std::vector<Matrix> ops;
  ops.reserve(tau_a.kraus_ops().size() * tau_b.kraus_ops().size());
  for (const Matrix& ka : tau_a.kraus_ops()) {
    for (const Matrix& kb : tau_b.kraus_ops()) ops.push_back(kron(ka, kb));
  }
  return KrausChannel::from_kraus(std::move(ops),
                                  std::make_pair(tau_a.dim(), tau_b.dim()));
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim()) throw DimensionError("apply: dimension mismatch");
  Matrix out = Matrix::Zero(ch.dim(), ch.dim());
  for (const Matrix& k : ch.kraus_ops()) out += k * rho.matrix() * k.adjoint();
  StateTolerances tol;
  tol.positivity = 1e-9;  // Kraus sums may dip slightly below the default floor
  return validate_state(out, tol);
}

Matrix adjoint_apply(const KrausChannel& ch, const Matrix& o) {
  if (o.rows() != ch.dim() || o.cols() != ch.dim()) {
    throw DimensionError("adjoint_apply: dimension mismatch");
  }
  Matrix out = Matrix::Zero(ch.dim(), ch.dim());
  for (const Matrix& k : ch.kraus_ops()) out += k.adjoint() * o * k;
  return out;
}

KrausChannel random_channel(int dim, int env_dim, std::uint64_t seed) {
  if (dim < 1 || env_dim < 1) throw DimensionError("random_channel: dims must be >= 1");
  Rng rng(seed);
  const Matrix v = haar_isometry(dim * env_dim, dim, rng);
  std::vector<Matrix> ops;
  ops.reserve(static_cast<size_t>(env_dim));
  for (int e = 0; e < env_dim; ++e) {
    ops.push_back(v.middleRows(static_cast<Eigen::Index>(e) * dim, dim));
  }
  return KrausChannel::from_kraus(std::move(ops));
}

ChoiMatrix choi_matrix(const KrausChannel& ch) {
  const int d = ch.dim();
  Matrix c = Matrix::Zero(static_cast<Eigen::Index>(d) * d,
                          static_cast<Eigen::Index>(d) * d);
  // vec_r(K)[(k,i)] = K(k,i); Choi = Σ vec_r(K) vec_r(K)†
  Eigen::VectorXcd v(static_cast<Eigen::Index>(d) * d);
  for (const Matrix& k : ch.kraus_ops()) {
    for (int r = 0; r < d; ++r) {
      for (int i = 0; i < d; ++i) v(static_cast<Eigen::Index>(r) * d + i) = k(r, i);
    }
    c += v * v.adjoint();
  }
  return ChoiMatrix{std::move(c), d};
}

ProductTest is_product(const KrausChannel& ch, double tol) {
  if (!ch.subsystem_dims()) {
    throw DimensionError("is_product: channel carries no subsystem dims");
  }
  const auto [da, db] = *ch.subsystem_dims();
  const ChoiMatrix choi = choi_matrix(ch);
  const int d = ch.dim();

  // reshuffle C[(kA kB, iA iB), (lA lB, jA jB)] -> M[(kA iA lA jA), (kB iB lB jB)]
  const long long rows = static_cast<long long>(da) * da * da * da;
  const long long cols = static_cast<long long>(db) * db * db * db;
  Matrix m(rows, cols);
  for (int ka = 0; ka < da; ++ka)
    for (int ia = 0; ia < da; ++ia)
      for (int la = 0; la < da; ++la)
        for (int ja = 0; ja < da; ++ja) {
          const long long r = ((static_cast<long long>(ka) * da + ia) * da + la) * da + ja;
          for (int kb = 0; kb < db; ++kb)
            for (int ib = 0; ib < db; ++ib)
              for (int lb = 0; lb < db; ++lb)
                for (int jb = 0; jb < db; ++jb) {
                  const long long c = ((static_cast<long long>(kb) * db + ib) * db + lb) * db + jb;
                  const long long crow = static_cast<long long>(ka * db + kb) * d + (ia * db + ib);
                  const long long ccol = static_cast<long long>(la * db + lb) * d + (ja * db + jb);
                  m(r, c) = choi.matrix(crow, ccol);
                }
        }

  RealVector sv = singular_values(m);
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int above = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * smax) ++above;
  }
  return ProductTest{above == 1, std::move(sv)};
}

std::string to_text(const KrausChannel& ch) {
  std::ostringstream os;
  os << "opspread-channel v1\n";
  os << "dim " << ch.dim() << "\n";
  if (ch.subsystem_dims()) {
    os << "subsystem_dims " << ch.subsystem_dims()->first << " "
       << ch.subsystem_dims()->second << "\n";
  }
  os << "kraus_count " << ch.kraus_ops().size() << "\n";
  for (size_t a = 0; a < ch.kraus_ops().size(); ++a) {
    os << "kraus " << a << "\n";
    const Matrix& k = ch.kraus_ops()[a];
    for (int r = 0; r < ch.dim(); ++r) {
      for (int c = 0; c < ch.dim(); ++c) {
        if (c > 0) os << " ";
        os << format_double(k(r, c).real()) << " " << format_double(k(r, c).imag());
      }
      os << "\n";
    }
  }
  return os.str();
}

KrausChannel channel_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> std::string {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty()) return line;
    }
    throw ParseError("channel_from_text: unexpected end of document");
  };
  auto fail = [&](const std::string& why) -> ParseError {
    std::ostringstream os;
    os << "channel_from_text: line " << lineno << ": " << why;
    return ParseError(os.str());
  };

  if (next_line() != "opspread-channel v1") throw fail("bad header");

  std::istringstream hs(next_line());
  std::string key;
  int dim = 0;
  if (!(hs >> key >> dim) || key != "dim" || dim < 1) throw fail("expected 'dim <n>'");

  std::optional<std::pair<int, int>> subsys;
  std::string counts = next_line();
  {
    std::istringstream ss(counts);
    ss >> key;
    if (key == "subsystem_dims") {
      int da = 0, db = 0;
      if (!(ss >> da >> db)) throw fail("expected 'subsystem_dims <a> <b>'");
      subsys = std::make_pair(da, db);
      counts = next_line();
    }
  }
  std::istringstream cs(counts);
  size_t n_kraus = 0;
  if (!(cs >> key >> n_kraus) || key != "kraus_count" || n_kraus == 0) {
    throw fail("expected 'kraus_count <n>'");
  }

  std::vector<Matrix> ops;
  ops.reserve(n_kraus);
  for (size_t a = 0; a < n_kraus; ++a) {
    std::istringstream ks(next_line());
    size_t idx = 0;
    if (!(ks >> key >> idx) || key != "kraus" || idx != a) throw fail("expected 'kraus <index>'");
    Matrix k(dim, dim);
    for (int r = 0; r < dim; ++r) {
      std::istringstream rs(next_line());
      for (int c = 0; c < dim; ++c) {
        double re = 0.0, im = 0.0;
        if (!(rs >> re >> im)) throw fail("bad matrix row");
        k(r, c) = Complex(re, im);
      }
      double extra;
      if (rs >> extra) throw fail("trailing numbers in matrix row");
    }
    ops.push_back(std::move(k));
  }
  return KrausChannel::from_kraus(std::move(ops), subsys);
}

void save_channel(const KrausChannel& ch, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("save_channel: cannot open " + path);
  out << to_text(ch);
  if (!out) throw ParseError("save_channel: write failed for " + path);
}

KrausChannel load_channel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("load_channel: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return channel_from_text(buf.str());
}

}  // namespace opspread
