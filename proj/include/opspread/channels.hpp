#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opspread/matkernel.hpp"
#include "opspread/states.hpp"

namespace opspread {

/// CPTP map in Kraus form. Immutable after validation; every instance
/// satisfies ‖Σ K†K - I‖ < completeness tolerance.
class KrausChannel {
 public:
  static KrausChannel from_kraus(std::vector<Matrix> ops,
                                 std::optional<std::pair<int, int>> subsystem_dims = {},
                                 double completeness_tol = 1e-9);

  int dim() const { return dim_; }
  const std::vector<Matrix>& kraus_ops() const { return ops_; }
  const std::optional<std::pair<int, int>>& subsystem_dims() const { return subsys_; }

  /// Same channel retagged with a bipartition d_a · d_b = dim.
  KrausChannel with_subsystems(int d_a, int d_b) const;

 private:
  KrausChannel(std::vector<Matrix> ops, std::optional<std::pair<int, int>> subsys, int dim)
      : ops_(std::move(ops)), subsys_(subsys), dim_(dim) {}
  std::vector<Matrix> ops_;
  std::optional<std::pair<int, int>> subsys_;
  int dim_;
};

/// Conjugation ρ ↦ uρu† as a single-Kraus channel.
KrausChannel unitary_channel(const Matrix& u,
                             std::optional<std::pair<int, int>> subsystem_dims = {},
                             double tol = kHermTol);

/// Kraus set {K_a ⊗ K_b}; the result is tagged with (dim_a, dim_b).
KrausChannel product_channel(const KrausChannel& tau_a, const KrausChannel& tau_b);

/// Schrödinger action Σ KρK†; the output is revalidated as a state.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// Heisenberg (adjoint) action Σ K†OK. Unital for trace-preserving maps.
Matrix adjoint_apply(const KrausChannel& ch, const Matrix& o);

/// Channel from a Haar-random Stinespring isometry dim → dim·env_dim,
/// yielding env_dim Kraus operators. Deterministic given the seed.
KrausChannel random_channel(int dim, int env_dim, std::uint64_t seed);

/// (τ ⊗ id) of the unnormalized maximally entangled operator.
/// Row index groups (output, input) as out·dim + in; Tr = dim.
struct ChoiMatrix {
  Matrix matrix;
  int dim;
};

ChoiMatrix choi_matrix(const KrausChannel& ch);

/// Outcome of the product-map test: the decision plus the full operator
/// Schmidt spectrum of the Choi operator across the A:B cut (descending).
struct ProductTest {
  bool is_product;
  RealVector schmidt_values;
};

/// A channel factorizes as τ_A ⊗ τ_B iff its Choi operator, reshuffled into
/// the (A-in,A-out):(B-in,B-out) bipartition, has exactly one singular value
/// above tol·σ_max.
ProductTest is_product(const KrausChannel& ch, double tol = 1e-8);

/// Structured-text serialization; numeric fields round-trip exactly.
std::string to_text(const KrausChannel& ch);
KrausChannel channel_from_text(const std::string& text);
void save_channel(const KrausChannel& ch, const std::string& path);
KrausChannel load_channel(const std::string& path);

}  // namespace opspread
