#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adl/fgab.hpp"
#include "adl/mat.hpp"
#include "adl/mod1.hpp"
#include "adl/surface.hpp"

namespace adl {

// Element of the torsion-free topological sector on a SpacetimeModel (m, k):
// torus-valued holonomies u (degree k-1) and ut (degree m-k-1) together with
// integer flux coordinates z (degree k) and zt (degree m-k), all expressed on
// the free generators of the respective groups. Holonomies are kept reduced
// to [0,1) per coordinate; fluxes are unconstrained integers.
struct TopFreeElement {
    std::vector<CircleValue> u;
    std::vector<CircleValue> ut;
    std::vector<Int> z;
    std::vector<Int> zt;
};

// Element of the torsion topological sector: torsion classes t (degree k) and
// tt (degree m-k) in coordinates on the invariant-factor generators, each
// reduced modulo its factor.
struct TopTorElement {
    std::vector<Int> t;
    std::vector<Int> tt;
};

TopFreeElement top_free_zero(const SpacetimeModel& st);
TopFreeElement top_free_element(std::vector<CircleValue> u, std::vector<CircleValue> ut,
                                std::vector<Int> z, std::vector<Int> zt,
                                const SpacetimeModel& st);
// Convenience constructor for exact holonomies.
TopFreeElement top_free_rational(const std::vector<Rat>& u, const std::vector<Rat>& ut,
                                 std::vector<Int> z, std::vector<Int> zt,
                                 const SpacetimeModel& st);

TopTorElement top_tor_zero(const SpacetimeModel& st);
TopTorElement top_tor_element(std::vector<Int> t, std::vector<Int> tt, const SpacetimeModel& st);

// Componentwise group operations. Addition and negation need no model (the
// coordinates carry their own reductions); the torsion versions re-reduce
// against the invariant factors, so they take the model.
TopFreeElement top_free_add(const TopFreeElement& a, const TopFreeElement& b);
TopFreeElement top_free_negate(const TopFreeElement& a);
bool top_free_is_zero(const TopFreeElement& a);
TopTorElement top_tor_add(const TopTorElement& a, const TopTorElement& b,
                          const SpacetimeModel& st);
TopTorElement top_tor_negate(const TopTorElement& a, const SpacetimeModel& st);
bool top_tor_is_zero(const TopTorElement& a);

// Exact equality / strict ordering on exact elements, suitable as a map key
// order. Ordering an element with approximate holonomies is an error.
bool top_free_equal(const TopFreeElement& a, const TopFreeElement& b);
int top_free_compare(const TopFreeElement& a, const TopFreeElement& b);
bool top_tor_equal(const TopTorElement& a, const TopTorElement& b);
int top_tor_compare(const TopTorElement& a, const TopTorElement& b);

// Antisymmetric circle-valued pairing on the torsion-free sector,
//   sigma((u,ut,z,zt),(u',ut',z',zt')) =
//     <ut,z'> - (-1)^{k(m-k)} <u,zt'> - <ut',z> + (-1)^{k(m-k)} <u',zt>,
// with <.,.> the cup-product pairings evaluated against the fundamental
// class; the model's orientation sign multiplies the total.
CircleValue sigma_free(const TopFreeElement& a, const TopFreeElement& b,
                       const SpacetimeModel& st);

// Antisymmetric pairing on the torsion sector, <tt,t'> - <tt',t> through the
// degree-(m-k) linking matrix. The stored linking matrices refer to the
// reference orientation, so the orientation sign multiplies the total here
// as well. Degrees without torsion give zero.
CircleValue sigma_tor(const TopTorElement& a, const TopTorElement& b, const SpacetimeModel& st);

// The degree-swapping duality: the same surface with k replaced by m - k.
SpacetimeModel dual_model(const SpacetimeModel& st);

// (u,ut,z,zt) -> (ut, (-1)^{k(m-k)+1} u, zt, (-1)^{k(m-k)+1} z), an element
// of dual_model(st); preserves sigma_free. Applying it twice multiplies
// every component by (-1)^{k(m-k)+1}.
TopFreeElement duality_free(const TopFreeElement& a, const SpacetimeModel& st);

// (t,tt) -> (tt, (-1)^{k(m-k)+1} t), an element of dual_model(st);
// preserves sigma_tor.
TopTorElement duality_tor(const TopTorElement& a, const SpacetimeModel& st);

// Pairings of chosen lifts of the free generators, the only data the
// splitting solver needs. c[i][j] holds the mod-1 pairing of the i-th
// degree-(m-k) lift against the j-th degree-k lift, entries in [0,1).
// When m = 2k the degree-k lifts also pair among themselves; those values
// ride along in self_pairings (same normalization, and the mod-1 symmetry
// c[i][j] = (-1)^{k^2} c[j][i] must hold).
struct LiftPairingData {
    QMat c;
    std::optional<QMat> self_pairings;
};

void validate_lift_pairing(const LiftPairingData& data, const SpacetimeModel& st);

// Deterministic lift data from a seed: denominators up to 24, the self block
// generated only when m = 2k and shaped to satisfy its symmetry (for odd k
// the diagonal is forced to zero, the one consistent value that admits a
// correction).
LiftPairingData lift_pairing_seeded(const SpacetimeModel& st, std::uint64_t seed);

LiftPairingData lift_pairing_from_json(const std::string& text, const SpacetimeModel& st);
std::string lift_pairing_to_json(const LiftPairingData& data);

// Output of the splitting solves. chi_correction rows are coefficients of
// the subtracted flat correction in the dual basis; dual_basis rows are the
// dual basis vectors themselves in free-generator coordinates (degree
// m-k-1), normalized so row i pairs to 1 against degree-k generator i and 0
// against the rest. residual is the largest distance from 0 mod 1 among the
// corrected pairings, recomputed from the coordinates; rational data makes
// it exactly zero.
struct SplittingResult {
    QMat chi_correction;
    QMat dual_basis;
    Rat residual;
    bool self_dual = false;
};

// Corrected lift coordinates: chi_correction * dual_basis, one row per
// corrected generator.
QMat correction_on_generators(const SplittingResult& r);

// Cancel the mixed pairings of the chosen lifts by subtracting flat classes:
// corrected lift i picks up coefficient c[i][j] on dual basis vector j.
SplittingResult solve_chi_splitting(const LiftPairingData& lifts, const SpacetimeModel& st);

// The m = 2k variant, cancelling the degree-k self pairings with half the
// lifted coefficient matrix. For odd k the lifted matrix must be chosen
// antisymmetric over the reals; a nonzero diagonal (necessarily 1/2) admits
// no correction at all and is rejected.
SplittingResult solve_selfdual_chi(const LiftPairingData& lifts, const SpacetimeModel& st);

// Solve for the torus element (u, ut) whose pairing against every integer
// flux reproduces a given character of the flux lattices: character_z[i] is
// the value on the i-th degree-k generator, character_zt[j] on the j-th
// degree-(m-k) generator. Values must be exact; the solution is verified
// against sigma_free on every generator before it is returned.
TopFreeElement solve_delta_corrections(const std::vector<CircleValue>& character_z,
                                       const std::vector<CircleValue>& character_zt,
                                       const SpacetimeModel& st);

// One observable in the decomposed algebra: an optional handle into a
// dynamical sector plus the two topological components.
struct ObservableElement {
    std::optional<int> dyn;
    TopFreeElement free_part;
    TopTorElement tor_part;
};

// Pairing on dynamical handles, supplied by whichever dynamical model is in
// play; absent means the dynamical block contributes nothing.
using DynPairing = std::function<CircleValue(int, int)>;

// The assembled observable group with its block-diagonal total pairing.
// Construction insists on validated splittings (residual exactly zero), the
// condition for the blocks to be symplectically orthogonal.
class AssembledObservables {
  public:
    AssembledObservables(SpacetimeModel st, SplittingResult chi,
                         std::optional<SplittingResult> self_chi = std::nullopt,
                         DynPairing dyn = nullptr);

    const SpacetimeModel& model() const { return st_; }
    const SplittingResult& chi() const { return chi_; }
    const std::optional<SplittingResult>& self_chi() const { return self_chi_; }

    ObservableElement element(std::optional<int> dyn, TopFreeElement free_part,
                              TopTorElement tor_part) const;

    // sigma_dyn + sigma_free + sigma_tor of the components. The dynamical
    // term enters only when both elements carry a handle and a pairing is
    // wired.
    CircleValue sigma_total(const ObservableElement& a, const ObservableElement& b) const;

  private:
    SpacetimeModel st_;
    SplittingResult chi_;
    std::optional<SplittingResult> self_chi_;
    DynPairing dyn_;
};

}  // namespace adl
