#pragma once

#include <optional>
#include <vector>

#include "vorsym/cone.hpp"
#include "vorsym/polytope.hpp"

namespace vorsym {

/// A perfect form: the supporting point y of one facet of the Voronoi
/// polyhedron, normalized so the minimum of <z,y> over cusp lattice points is
/// exactly 1, together with the minimal vectors attaining it and the facet's
/// combinatorics.  mins is sorted by embedded coordinates and aligned with
/// comb.vertices.
struct PerfectForm {
  QVector y;
  std::vector<CuspPoint> mins;
  FacetCombinatorics comb;
};

/// Ridge of the cone over a facet: <z, normal> = 0 on the ridge's minimal
/// vectors and > 0 on the rest of Z (pairing via space.inner).
struct ConeRidge {
  std::vector<int> verts;  // indices into mins
  QVector normal;
};

struct AtlasMove {
  int target{-1};
  GroupElement gamma;  // gamma . (computed neighbor) == reps[target]
};

/// Resource guards for the search loops; the CLI exposes these as flags.
struct Guards {
  Int max_seed_norm{64};
  int max_reps{64};
  std::size_t max_enum{50000000};
  int max_dim_v{21};
};

/// Facet representatives of the Voronoi polyhedron modulo the lattice
/// automorphism group, with a transporting group element per ridge.
struct Atlas {
  ConeSpace space;
  std::vector<PerfectForm> reps;
  std::vector<std::vector<ConeRidge>> ridges;  // per rep
  std::vector<std::vector<AtlasMove>> moves;   // per rep, aligned with ridges
};

/// Builds a PerfectForm from a candidate y: enumerates the minimal vectors,
/// verifies that every cusp value at most 1 is exactly 1 and that the minimal
/// vectors span V, and computes the facet combinatorics.  Throws
/// PerfectionFailure when y is not a normalized perfect form.
PerfectForm make_perfect_form(const ConeSpace& space, const QVector& y,
                              std::size_t max_enum = 0);

/// Seed facet.  Over Z this is Voronoi's principal form; over O_K it grows a
/// bounded cusp set, hulls it, and tests candidate facets until one passes
/// the perfection check (SeedSearchExhausted reports the bound on failure).
PerfectForm initial_perfect_form(const ConeSpace& space, const Guards& guards = {});

std::vector<ConeRidge> cone_ridges(const ConeSpace& space, const PerfectForm& f);

/// rho(x) = (1 - <x, y_F>) / <x, v>; DivisionByZero when <x, v> = 0.
Rat rho(const ConeSpace& space, const CuspPoint& x, const PerfectForm& f, const QVector& v);

struct NeighborResult {
  PerfectForm form;
  Rat rho_bar;      // y_G = y_F + rho_bar * v
  CuspPoint seed;   // the member of S the search used
};

/// The unique perfect form adjacent along ridge e (expanding-radius seed
/// search, finite T-set, exact minimization of rho, affine solve, full
/// reverification).
NeighborResult neighbor_across_ridge(const ConeSpace& space, const PerfectForm& f,
                                     const ConeRidge& e, const Guards& guards = {});

/// Some gamma with act(gamma) . Z_from = Z_to (as cusp sets) and
/// push_form(gamma, y_from) = y_to, or nullopt.  Fast invariant rejection,
/// then backtracking over minimal-vector assignments.
std::optional<GroupElement> forms_equivalent(const ConeSpace& space, const PerfectForm& to,
                                             const PerfectForm& from);

/// All self-equivalences of f realized in the lattice automorphism group.
std::vector<GroupElement> facet_stabilizer(const ConeSpace& space, const PerfectForm& f);

/// Breadth-first closure over ridges starting from a verified seed.
Atlas classify(const ConeSpace& space, const PerfectForm& seed, const Guards& guards = {});

struct ReduceResult {
  int rep{0};
  GroupElement g;  ///< x lies in the cone over g^{-1} . reps[rep]
  Rat mu;
  std::vector<Rat> mu_trace;         ///< strictly decreasing walk witness
  std::vector<Rat> neighbor_values;  ///< certificate: one value >= mu per ridge
};

/// Voronoi reduction walk.  Throws NotInCone unless x is interior.
ReduceResult reduce_point(const Atlas& atlas, const QVector& x);

/// R(x): the vertex set of the minimal Voronoi cone containing x, derived
/// from the ridges active at x inside the certified containing facet.
/// Returned in the original (untransported) frame.
std::vector<CuspPoint> smallest_containing_face(const Atlas& atlas, const QVector& x,
                                                const ReduceResult& rr);

}  // namespace vorsym
