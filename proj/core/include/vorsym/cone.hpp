#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vorsym/linalg.hpp"

namespace vorsym {

enum class SpaceKind { symmetric, hermitian };

/// Element x + y*omega of the base ring (y is always 0 over Z).
struct RingElem {
  Int x{0}, y{0};
  bool operator==(const RingElem& o) const { return x == o.x && y == o.y; }
  bool operator!=(const RingElem& o) const { return !(*this == o); }
  bool is_zero() const { return x == 0 && y == 0; }
};

/// A cusp: primitive lattice point of L on a rank-one boundary ray, together
/// with a canonical base-ring generator vector u satisfying
/// u u^dag = content * embed.  content == 1 except for rays attached to
/// non-principal ideal classes, where no vector generator hits the primitive
/// lattice point itself.
struct CuspPoint {
  QVector embed;
  std::vector<RingElem> gen;
  Int content{1};

  bool operator==(const CuspPoint& o) const { return embed == o.embed; }
  bool operator!=(const CuspPoint& o) const { return !(*this == o); }
  /// Total order by the canonical generator tuple (the tie-break order used
  /// throughout symbol reduction), refined by the embedded coordinates.
  bool operator<(const CuspPoint& o) const;
};

class GroupElement;

/// A concrete self-adjoint homogeneous cone C in its rational vector space V,
/// with the trace scalar product, the lattice L (identified with Z^dimV via
/// the stored basis), and base-ring arithmetic.
class ConeSpace {
public:
  static ConeSpace make_symmetric(int n);
  /// K = Q(sqrt(-m)); throws InvalidParameter unless m is squarefree and >= 1.
  static ConeSpace make_hermitian(int m);
  /// "sym:n" or "herm:m".
  static ConeSpace parse(const std::string& descriptor);

  SpaceKind kind() const { return kind_; }
  int mat_size() const { return n_; }  ///< n for sym:n, 2 for herm:m
  int field_m() const { return m_; }
  int dim_v() const { return dim_v_; }
  const QMatrix& gram() const { return gram_; }
  std::string descriptor() const;

  // ---- base ring  (omega^2 = omega_trace*omega - omega_norm) ----
  Int omega_trace() const { return t_; }
  Int omega_norm() const { return nrm_; }
  RingElem r_add(const RingElem& a, const RingElem& b) const;
  RingElem r_sub(const RingElem& a, const RingElem& b) const;
  RingElem r_mul(const RingElem& a, const RingElem& b) const;
  RingElem r_neg(const RingElem& a) const;
  RingElem r_conj(const RingElem& a) const;
  Int r_norm(const RingElem& a) const;
  /// Exact division a/b within the ring; nullopt if b = 0 or a/b leaves it.
  std::optional<RingElem> r_div(const RingElem& a, const RingElem& b) const;
  const std::vector<RingElem>& unit_group() const { return units_; }

  // ---- scalar product and positivity ----
  Rat inner(const QVector& x, const QVector& y) const;
  /// Exact leading-principal-minor test of the associated matrix.
  bool is_in_cone(const QVector& y) const;
  /// Positive semidefiniteness (all principal minors nonnegative).
  bool is_in_closed_cone(const QVector& y) const;

  // ---- cusps ----
  /// Coordinates of v v^dag in V (integral when v is).
  QVector embed_of_generator(const std::vector<RingElem>& v) const;
  CuspPoint cusp_from_generator(const std::vector<RingElem>& v) const;
  /// Validates that z is a nonzero primitive integral rank-one psd point.
  CuspPoint cusp_from_embed(const QVector& z) const;
  /// All integral vectors u (up to nothing: every u) with u u^dag = c * embed.
  std::vector<std::vector<RingElem>> vectors_on_ray(const QVector& embed, const Int& c) const;

  /// Exactly the cusps z in L' on the boundary rays with 0 < <z,y> <= mu.
  /// Short-vector enumeration over base-ring generators with an ideal-class
  /// bound, then primitivization and unit dedupe.  Throws NotInCone if y is
  /// not positive definite (the search would not terminate).
  std::vector<CuspPoint> enumerate_cusps_below(const QVector& y, const Rat& mu,
                                               std::size_t max_visits = 0) const;

  // ---- group elements ----
  GroupElement identity_element() const;
  /// entries: row-major k x k over the base ring.  Validates the determinant
  /// (+1 over Z after sign normalization for odd n; any unit over O_K) and
  /// caches the induced linear map on V.  Throws NonUnimodular.
  GroupElement group_element(const std::vector<RingElem>& entries) const;

  QVector act(const GroupElement& g, const QVector& x) const;
  CuspPoint act(const GroupElement& g, const CuspPoint& z) const;
  /// Covariant action on forms: <act(g,z), push_form(g,y)> = <z,y>.
  QVector push_form(const GroupElement& g, const QVector& y) const;
  /// Adjoint: <g.x, y> = <x, act_form(g,y)>.  Equals push_form(g^{-1}, .).
  QVector act_form(const GroupElement& g, const QVector& y) const;
  GroupElement g_mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement g_inverse(const GroupElement& g) const;

  /// Gram matrix on Z^k of the positive-definite form v -> <v v^dag, y>,
  /// k = n over Z, k = 2*2 integral coordinates over O_K.
  QMatrix generator_form(const QVector& y) const;
  /// Every ideal class contains an integral ideal of norm <= this.
  Int class_norm_bound() const { return class_bound_; }

private:
  ConeSpace() = default;

  SpaceKind kind_{SpaceKind::symmetric};
  int n_{0}, m_{0}, dim_v_{0};
  Int t_{0}, nrm_{0};  // omega data (hermitian)
  Int class_bound_{1};
  QMatrix gram_;
  std::vector<RingElem> units_;
};

/// Base-ring k x k matrix plus its cached induced map on V.
class GroupElement {
public:
  const std::vector<RingElem>& ring_mat() const { return mat_; }
  int k() const { return k_; }
  const QMatrix& vmap() const { return vmap_; }
  const QMatrix& vmap_inv() const { return vmap_inv_; }
  bool operator==(const GroupElement& o) const { return mat_ == o.mat_; }

private:
  friend class ConeSpace;
  std::vector<RingElem> mat_;
  int k_{0};
  QMatrix vmap_, vmap_inv_;
};

/// Enumerates every nonzero integer vector x with x^T g x <= bound (g positive
/// definite, exact arithmetic throughout).  Stops with ResourceGuard after
/// max_visits complete vectors when max_visits > 0.
void enumerate_short_vectors(const QMatrix& g, const Rat& bound,
                             const std::function<void(const std::vector<Int>&, const Rat&)>& visit,
                             std::size_t max_visits = 0);

}  // namespace vorsym
