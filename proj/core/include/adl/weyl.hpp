#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adl/arith.hpp"
#include "adl/mat.hpp"
#include "adl/mod1.hpp"
#include "adl/rng.hpp"
#include "adl/sectors.hpp"

namespace adl {

// Weyl algebra over a presymplectic abelian group, held at the level of
// finite formal sums of generators subject to
//
//   W(g) W(g') = e^{2 pi i sigma(g,g')} W(g + g'),      W(g)* = W(-g),
//
// with the norm |sum_j alpha_j W(g_j)|_1 = sum_j |alpha_j| taken on
// canonical forms. Completions are out of scope by design: nothing here
// models the Banach *-algebra closure or its enveloping C*-algebra, and
// every guarantee those would provide abstractly is certified concretely
// instead, by Gram positivity of the states on finite generator families
// (gram_positivity below). Coefficients and pairing phases stay exact as
// long as the inputs are exact, so the algebra laws and the positivity
// identities hold to the bit, not merely within tolerance.

// In float mode a coefficient below this modulus counts as zero and is
// dropped by canonicalization. Exact coefficients drop only true zeros.
inline constexpr double kCoeffDrop = 1e-15;

// Complex coefficient of a formal sum. Exact mode stores a finite sum of
// Gaussian-rational amplitudes times unit phases e^{2 pi i theta}, with
// quarter turns folded into the amplitude so every stored theta is rational
// in [0, 1/4). Sums, products, conjugation, and phase shifts then stay
// exact. Approximate mode is a plain complex double; any operation with an
// approximate operand lands there, never the other way around.
class WeylCoeff {
  public:
    WeylCoeff() : exact_(true), value_(0.0) {}

    static WeylCoeff zero() { return WeylCoeff(); }
    static WeylCoeff one();
    static WeylCoeff exact(GaussRat amp);
    static WeylCoeff approx(std::complex<double> value);
    // e^{2 pi i phase}; exact when the phase is.
    static WeylCoeff unit_phase(const CircleValue& phase);

    bool is_exact() const { return exact_; }
    // Exact: formally zero. Approximate: modulus below kCoeffDrop.
    bool is_zero() const;

    std::complex<double> approx_value() const;
    double abs() const { return std::abs(approx_value()); }

    WeylCoeff operator+(const WeylCoeff& o) const;
    WeylCoeff operator-(const WeylCoeff& o) const;
    WeylCoeff operator*(const WeylCoeff& o) const;
    WeylCoeff operator-() const;
    WeylCoeff conj() const;
    WeylCoeff times_phase(const CircleValue& phase) const;

    // Formal equality: identical mode and identical canonical data. Distinct
    // exact forms that happen to agree numerically compare unequal.
    bool operator==(const WeylCoeff& o) const;
    bool operator!=(const WeylCoeff& o) const { return !(*this == o); }

    // Folded (phase, amplitude) terms, sorted by phase. Exact mode only.
    const std::vector<std::pair<Rat, GaussRat>>& exact_terms() const;

    std::string str() const;

  private:
    bool exact_;
    std::vector<std::pair<Rat, GaussRat>> terms_;
    std::complex<double> value_;

    void normalize();
};

// ---------------------------------------------------------------------------
// Presymplectic group descriptors. Each bundles an element type with its
// canonical form, a strict total order (the term order of formal sums), the
// group law, and the antisymmetric circle-valued pairing. Every Weyl
// operation below is a template over such a descriptor, so the one algebra
// engine serves all sectors. Elements from a different model are rejected
// by the canonical form or by the pairing's shape checks.
// ---------------------------------------------------------------------------

// Torsion-free topological sector of a model, paired by sigma_free.
struct FreeSectorGroup {
    SpacetimeModel model;

    using Element = TopFreeElement;
    Element zero() const { return top_free_zero(model); }
    Element canonical(Element e) const {
        return top_free_element(std::move(e.u), std::move(e.ut), std::move(e.z),
                                std::move(e.zt), model);
    }
    Element add(const Element& a, const Element& b) const { return top_free_add(a, b); }
    Element negate(const Element& a) const { return top_free_negate(a); }
    bool is_zero(const Element& a) const { return top_free_is_zero(a); }
    int compare(const Element& a, const Element& b) const { return top_free_compare(a, b); }
    CircleValue pairing(const Element& a, const Element& b) const {
        return sigma_free(a, b, model);
    }
};

// Torsion topological sector of a model, paired by sigma_tor.
struct TorSectorGroup {
    SpacetimeModel model;

    using Element = TopTorElement;
    Element zero() const { return top_tor_zero(model); }
    Element canonical(Element e) const {
        return top_tor_element(std::move(e.t), std::move(e.tt), model);
    }
    Element add(const Element& a, const Element& b) const { return top_tor_add(a, b, model); }
    Element negate(const Element& a) const { return top_tor_negate(a, model); }
    bool is_zero(const Element& a) const { return top_tor_is_zero(a); }
    int compare(const Element& a, const Element& b) const { return top_tor_compare(a, b); }
    CircleValue pairing(const Element& a, const Element& b) const {
        return sigma_tor(a, b, model);
    }
};

// External direct sum of two descriptors with the block-diagonal pairing
// sigma((a1,a2),(b1,b2)) = sigma_1(a1,b1) + sigma_2(a2,b2); the factors
// never cross.
template <class G1, class G2>
struct ProductGroup {
    G1 first;
    G2 second;

    using Element = std::pair<typename G1::Element, typename G2::Element>;
    Element zero() const { return {first.zero(), second.zero()}; }
    Element canonical(Element e) const {
        return {first.canonical(std::move(e.first)), second.canonical(std::move(e.second))};
    }
    Element add(const Element& a, const Element& b) const {
        return {first.add(a.first, b.first), second.add(a.second, b.second)};
    }
    Element negate(const Element& a) const {
        return {first.negate(a.first), second.negate(a.second)};
    }
    bool is_zero(const Element& a) const {
        return first.is_zero(a.first) && second.is_zero(a.second);
    }
    int compare(const Element& a, const Element& b) const {
        if (int c = first.compare(a.first, b.first)) return c;
        return second.compare(a.second, b.second);
    }
    CircleValue pairing(const Element& a, const Element& b) const {
        return first.pairing(a.first, b.first) + second.pairing(a.second, b.second);
    }
};

// Group law on dynamical handles. The assembled algebra treats handles as
// opaque and only ever pairs them, so formal sums whose elements carry a
// handle need the handles' owner to supply composition explicitly.
struct DynGroupOps {
    std::function<int(int, int)> add;
    std::function<int(int)> negate;
    std::function<bool(int)> is_zero;
};

// The assembled observable group, paired by the algebra's sigma_total.
// Elements without dynamical handles form a subgroup that works with no
// DynGroupOps wired; an absent handle is the dynamical identity, and the
// canonical form clears handles the wired ops recognize as zero.
struct ObservableGroup {
    AssembledObservables algebra;
    std::optional<DynGroupOps> dyn;

    using Element = ObservableElement;

    Element zero() const {
        return Element{std::nullopt, top_free_zero(algebra.model()),
                       top_tor_zero(algebra.model())};
    }
    Element canonical(Element e) const {
        Element out =
            algebra.element(e.dyn, std::move(e.free_part), std::move(e.tor_part));
        if (out.dyn && dyn && dyn->is_zero(*out.dyn)) out.dyn.reset();
        return out;
    }
    Element add(const Element& a, const Element& b) const {
        Element out;
        out.free_part = top_free_add(a.free_part, b.free_part);
        out.tor_part = top_tor_add(a.tor_part, b.tor_part, algebra.model());
        if (a.dyn && b.dyn) {
            require(bool(dyn), "observable group: dynamical handles need a wired group law");
            int sum = dyn->add(*a.dyn, *b.dyn);
            if (!dyn->is_zero(sum)) out.dyn = sum;
        } else if (a.dyn || b.dyn) {
            out.dyn = a.dyn ? a.dyn : b.dyn;
        }
        return out;
    }
    Element negate(const Element& a) const {
        Element out;
        out.free_part = top_free_negate(a.free_part);
        out.tor_part = top_tor_negate(a.tor_part, algebra.model());
        if (a.dyn) {
            require(bool(dyn), "observable group: dynamical handles need a wired group law");
            out.dyn = dyn->negate(*a.dyn);
        }
        return out;
    }
    bool is_zero(const Element& a) const {
        return !a.dyn && top_free_is_zero(a.free_part) && top_tor_is_zero(a.tor_part);
    }
    int compare(const Element& a, const Element& b) const {
        if (a.dyn.has_value() != b.dyn.has_value()) return a.dyn ? 1 : -1;
        if (a.dyn && *a.dyn != *b.dyn) return *a.dyn < *b.dyn ? -1 : 1;
        if (int c = top_free_compare(a.free_part, b.free_part)) return c;
        return top_tor_compare(a.tor_part, b.tor_part);
    }
    CircleValue pairing(const Element& a, const Element& b) const {
        return algebra.sigma_total(a, b);
    }
};

// ---------------------------------------------------------------------------
// Formal sums and the algebra operations.
// ---------------------------------------------------------------------------

// Finite formal sum of generators over a descriptor G, stored in canonical
// form: terms sorted by the group's order, elements distinct, coefficients
// non-negligible. Build through the constructors below to keep it that way.
template <class G>
struct WeylElement {
    std::vector<std::pair<typename G::Element, WeylCoeff>> terms;
};

// Canonical form of an arbitrary term list: sort, merge equal elements,
// drop negligible coefficients.
template <class G>
WeylElement<G> weyl_collect(std::vector<std::pair<typename G::Element, WeylCoeff>> raw,
                            const G& group) {
    std::sort(raw.begin(), raw.end(), [&group](const auto& a, const auto& b) {
        return group.compare(a.first, b.first) < 0;
    });
    WeylElement<G> out;
    out.terms.reserve(raw.size());
    for (auto& term : raw) {
        if (!out.terms.empty() && group.compare(out.terms.back().first, term.first) == 0)
            out.terms.back().second = out.terms.back().second + term.second;
        else
            out.terms.push_back(std::move(term));
    }
    std::erase_if(out.terms, [](const auto& t) { return t.second.is_zero(); });
    return out;
}

template <class G>
WeylElement<G> weyl_zero() {
    return {};
}

// coeff * W(x). The element is put into canonical form by the group, which
// is also where a shape mismatch against the group's model surfaces.
template <class G>
WeylElement<G> weyl_term(const G& group, WeylCoeff coeff, typename G::Element x) {
    WeylElement<G> out;
    if (!coeff.is_zero())
        out.terms.emplace_back(group.canonical(std::move(x)), std::move(coeff));
    return out;
}

template <class G>
WeylElement<G> weyl_generator(const G& group, typename G::Element x) {
    return weyl_term(group, WeylCoeff::one(), std::move(x));
}

// The unit W(0).
template <class G>
WeylElement<G> weyl_one(const G& group) {
    return weyl_generator(group, group.zero());
}

template <class G>
bool weyl_is_zero(const WeylElement<G>& a) {
    return a.terms.empty();
}

template <class G>
WeylElement<G> weyl_add(const WeylElement<G>& a, const WeylElement<G>& b, const G& group) {
    auto raw = a.terms;
    raw.insert(raw.end(), b.terms.begin(), b.terms.end());
    return weyl_collect(std::move(raw), group);
}

// Negation and scalar multiples keep the term order, so no re-sort happens.
template <class G>
WeylElement<G> weyl_negate(const WeylElement<G>& a) {
    WeylElement<G> out = a;
    for (auto& t : out.terms) t.second = -t.second;
    return out;
}

template <class G>
WeylElement<G> weyl_sub(const WeylElement<G>& a, const WeylElement<G>& b, const G& group) {
    return weyl_add(a, weyl_negate(b), group);
}

template <class G>
WeylElement<G> weyl_scale(const WeylCoeff& coeff, const WeylElement<G>& a) {
    WeylElement<G> out = a;
    for (auto& t : out.terms) t.second = coeff * t.second;
    std::erase_if(out.terms, [](const auto& t) { return t.second.is_zero(); });
    return out;
}

// Bilinear extension of W(g) W(g') = e^{2 pi i sigma(g,g')} W(g+g').
template <class G>
WeylElement<G> weyl_mul(const WeylElement<G>& a, const WeylElement<G>& b, const G& group) {
    std::vector<std::pair<typename G::Element, WeylCoeff>> raw;
    raw.reserve(a.terms.size() * b.terms.size());
    for (const auto& [ga, ca] : a.terms)
        for (const auto& [gb, cb] : b.terms)
            raw.emplace_back(group.add(ga, gb),
                             (ca * cb).times_phase(group.pairing(ga, gb)));
    return weyl_collect(std::move(raw), group);
}

// Antilinear involution extending W(g)* = W(-g).
template <class G>
WeylElement<G> weyl_star(const WeylElement<G>& a, const G& group) {
    std::vector<std::pair<typename G::Element, WeylCoeff>> raw;
    raw.reserve(a.terms.size());
    for (const auto& [g, c] : a.terms) raw.emplace_back(group.negate(g), c.conj());
    return weyl_collect(std::move(raw), group);
}

// Sum of coefficient moduli on the canonical form.
template <class G>
double norm1(const WeylElement<G>& a) {
    double total = 0.0;
    for (const auto& [g, c] : a.terms) total += c.abs();
    return total;
}

// Formal equality of canonical forms.
template <class G>
bool weyl_equal(const WeylElement<G>& a, const WeylElement<G>& b, const G& group) {
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i) {
        if (group.compare(a.terms[i].first, b.terms[i].first) != 0) return false;
        if (a.terms[i].second != b.terms[i].second) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// States. A state is its value on generators, extended linearly; evaluation
// accumulates in term order (the sorted canonical order), so results are
// reproducible bit for bit, and stays exact until the caller converts.
// ---------------------------------------------------------------------------

template <class Element>
struct StateFunctional {
    std::string name;
    std::function<WeylCoeff(const Element&)> on_generator;
};

template <class G>
WeylCoeff state_apply(const StateFunctional<typename G::Element>& state,
                      const WeylElement<G>& a) {
    WeylCoeff total;
    for (const auto& [g, c] : a.terms) total = total + c * state.on_generator(g);
    return total;
}

// Value 1 on generators with vanishing fluxes, 0 otherwise. Not faithful:
// for any fluxes (z, zt) and any nonzero holonomies (u, ut), the element
//   a = W(0,0,z,zt) - e^{2 pi i sigma((0,0,z,zt),(u,ut,z,zt))} W(u,ut,z,zt)
// is nonzero with omega(a* a) = 0.
StateFunctional<TopFreeElement> omega_free(const SpacetimeModel& st);

// Value 1 only on the identity; the faithful alternative.
StateFunctional<TopFreeElement> omega_free_faithful(const SpacetimeModel& st);

// Value 1 only on the identity of the torsion sector; faithful, with
// omega(a* a) = sum_i |alpha_i|^2 over distinct-generator sums.
StateFunctional<TopTorElement> omega_tor(const SpacetimeModel& st);

// Product state on assembled observables: the dynamical, free, and torsion
// factors of a generator evaluate independently and multiply. Generators
// carrying a dynamical handle need dyn_state wired, else evaluation fails.
StateFunctional<ObservableElement> omega_total(
    const AssembledObservables& algebra,
    std::function<WeylCoeff(int)> dyn_state = nullptr);

// Product of two states on the external direct sum.
template <class E1, class E2>
StateFunctional<std::pair<E1, E2>> product_state(StateFunctional<E1> s1,
                                                 StateFunctional<E2> s2) {
    std::string name = s1.name + "*" + s2.name;
    return {std::move(name),
            [s1 = std::move(s1), s2 = std::move(s2)](const std::pair<E1, E2>& g) {
                return s1.on_generator(g.first) * s2.on_generator(g.second);
            }};
}

// ---------------------------------------------------------------------------
// Positivity certificates.
// ---------------------------------------------------------------------------

using CxMat = Mat<std::complex<double>>;

// Smallest eigenvalue of a Hermitian matrix; the strict lower triangle is
// taken as the conjugate of the upper one.
double min_hermitian_eigenvalue(const CxMat& m);

struct GramCertificate {
    CxMat matrix;
    double min_eigenvalue = 0.0;
    // Largest |M_ij - conj(M_ji)| observed before symmetrizing.
    double hermitian_defect = 0.0;
};

// Certifies positivity of a state on the span of up to 64 generators:
// M_ij = omega(W(g_i)* W(g_j)), asserted self-adjoint within 1e-9, with its
// smallest eigenvalue attached. A state is positive on that span exactly
// when the eigenvalue is nonnegative (numerically: above a small negative
// tolerance).
template <class G>
GramCertificate gram_positivity(const StateFunctional<typename G::Element>& state,
                                const std::vector<typename G::Element>& generators,
                                const G& group) {
    require(!generators.empty(), "gram positivity: no generators");
    require(generators.size() <= 64, "gram positivity: at most 64 generators");
    const int n = int(generators.size());
    std::vector<WeylElement<G>> gens;
    gens.reserve(generators.size());
    for (const auto& g : generators) gens.push_back(weyl_generator(group, g));

    GramCertificate cert;
    cert.matrix = CxMat(n, n);
    for (int i = 0; i < n; ++i) {
        const auto starred = weyl_star(gens[i], group);
        for (int j = 0; j < n; ++j)
            cert.matrix(i, j) =
                state_apply(state, weyl_mul(starred, gens[j], group)).approx_value();
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            cert.hermitian_defect =
                std::max(cert.hermitian_defect,
                         std::abs(cert.matrix(i, j) - std::conj(cert.matrix(j, i))));
    require(cert.hermitian_defect <= 1e-9, "gram positivity: state matrix is not self-adjoint");
    cert.min_eigenvalue = min_hermitian_eigenvalue(cert.matrix);
    return cert;
}

// ---------------------------------------------------------------------------
// Tensor factorization. A SectorSplitView presents a group as a two-factor
// product claimed symplectically orthogonal; the maps below realize the
// factor embeddings and the mutually inverse passes between formal sums on
// the whole group and finite sums of elementary tensors, and the check
// certifies on samples that the claim holds inside the algebra.
// ---------------------------------------------------------------------------

template <class G1, class G2, class G>
struct SectorSplitView {
    G1 first;
    G2 second;
    G whole;
    std::function<typename G::Element(const typename G1::Element&,
                                      const typename G2::Element&)>
        combine;
    std::function<std::pair<typename G1::Element, typename G2::Element>(
        const typename G::Element&)>
        split;
};

// The tautological view of an external direct sum.
template <class G1, class G2>
SectorSplitView<G1, G2, ProductGroup<G1, G2>> product_split(G1 a, G2 b) {
    SectorSplitView<G1, G2, ProductGroup<G1, G2>> view{a, b, ProductGroup<G1, G2>{a, b},
                                                       nullptr, nullptr};
    view.combine = [](const typename G1::Element& x, const typename G2::Element& y) {
        return std::make_pair(x, y);
    };
    view.split = [](const typename ProductGroup<G1, G2>::Element& e) { return e; };
    return view;
}

// Free x torsion view of the assembled observables, for elements without
// dynamical handles.
SectorSplitView<FreeSectorGroup, TorSectorGroup, ObservableGroup> topological_split(
    const AssembledObservables& algebra);

// Finite sum of elementary tensors between the factor algebras.
template <class G1, class G2>
struct TensorSum {
    std::vector<std::pair<WeylElement<G1>, WeylElement<G2>>> factors;
};

// First-factor embedding, W(g1) -> W(combine(g1, 0)).
template <class G1, class G2, class G>
WeylElement<G> embed_first(const WeylElement<G1>& a, const SectorSplitView<G1, G2, G>& view) {
    std::vector<std::pair<typename G::Element, WeylCoeff>> raw;
    raw.reserve(a.terms.size());
    const auto pad = view.second.zero();
    for (const auto& [g, c] : a.terms) raw.emplace_back(view.combine(g, pad), c);
    return weyl_collect(std::move(raw), view.whole);
}

// Second-factor embedding, W(g2) -> W(combine(0, g2)).
template <class G1, class G2, class G>
WeylElement<G> embed_second(const WeylElement<G2>& b, const SectorSplitView<G1, G2, G>& view) {
    std::vector<std::pair<typename G::Element, WeylCoeff>> raw;
    raw.reserve(b.terms.size());
    const auto pad = view.first.zero();
    for (const auto& [g, c] : b.terms) raw.emplace_back(view.combine(pad, g), c);
    return weyl_collect(std::move(raw), view.whole);
}

// Multiply the embedded factors together: a tensor sum becomes one element
// of the whole algebra.
template <class G1, class G2, class G>
WeylElement<G> tensor_assemble(const TensorSum<G1, G2>& x,
                               const SectorSplitView<G1, G2, G>& view) {
    WeylElement<G> acc;
    for (const auto& [left, right] : x.factors)
        acc = weyl_add(
            acc, weyl_mul(embed_first(left, view), embed_second(right, view), view.whole),
            view.whole);
    return acc;
}

// Split every canonical term into an elementary tensor, the coefficient
// riding on the first factor.
template <class G1, class G2, class G>
TensorSum<G1, G2> tensor_split(const WeylElement<G>& y, const SectorSplitView<G1, G2, G>& view) {
    TensorSum<G1, G2> out;
    out.factors.reserve(y.terms.size());
    for (const auto& [g, c] : y.terms) {
        auto parts = view.split(g);
        out.factors.push_back({weyl_term(view.first, c, std::move(parts.first)),
                               weyl_generator(view.second, std::move(parts.second))});
    }
    return out;
}

// Canonical expansion of a tensor sum over the product group; two tensor
// sums represent the same tensor exactly when their expansions agree.
template <class G1, class G2, class G>
WeylElement<ProductGroup<G1, G2>> tensor_expand(const TensorSum<G1, G2>& x,
                                                const SectorSplitView<G1, G2, G>& view) {
    ProductGroup<G1, G2> pg{view.first, view.second};
    std::vector<std::pair<typename ProductGroup<G1, G2>::Element, WeylCoeff>> raw;
    for (const auto& [left, right] : x.factors)
        for (const auto& [g1, c1] : left.terms)
            for (const auto& [g2, c2] : right.terms)
                raw.emplace_back(std::make_pair(g1, g2), c1 * c2);
    return weyl_collect(std::move(raw), pg);
}

// Upper bound on the projective tensor norm of a tensor sum.
template <class G1, class G2>
double tensor_norm_bound(const TensorSum<G1, G2>& x) {
    double total = 0.0;
    for (const auto& [left, right] : x.factors) total += norm1(left) * norm1(right);
    return total;
}

struct FactorizationReport {
    int samples = 0;
    int commutation_failures = 0;
    int tensor_roundtrip_failures = 0;
    int algebra_roundtrip_failures = 0;
    int norm_violations = 0;

    bool passed() const {
        return commutation_failures == 0 && tensor_roundtrip_failures == 0 &&
               algebra_roundtrip_failures == 0 && norm_violations == 0;
    }
    std::string summary() const;
};

// Coefficient, holonomy, and torsion samplers for seeded families. Draw
// order is fixed (coefficients re then im; elements u, ut, z, zt), so a
// seed pins the family.
WeylCoeff sample_coeff(Rng& rng, long max_den = 8);
TopFreeElement sample_top_free(const SpacetimeModel& st, Rng& rng, long max_den = 8,
                               long max_flux = 1);
TopTorElement sample_top_tor(const SpacetimeModel& st, Rng& rng);

// Samples the factorization identities on n_samples draws from the two
// factor samplers: embedded factors commute with the exact phase one,
// assembling and splitting invert each other both on tensor sums and on
// whole elements, and the split's norm bound never exceeds the 1-norm.
// Exact-valued samplers keep every comparison formal; failures count per
// sample in the report rather than throwing.
template <class G1, class G2, class G, class S1, class S2>
FactorizationReport tensor_factorization_check(const SectorSplitView<G1, G2, G>& view,
                                               S1&& sample_first, S2&& sample_second,
                                               int n_samples, Rng& rng) {
    FactorizationReport report;
    report.samples = n_samples;
    ProductGroup<G1, G2> expansion_group{view.first, view.second};
    auto small_sum = [&rng](const auto& group, auto& sampler) {
        auto out = weyl_term(group, sample_coeff(rng), sampler(rng));
        return weyl_add(out, weyl_term(group, sample_coeff(rng), sampler(rng)), group);
    };
    for (int i = 0; i < n_samples; ++i) {
        const auto g1 = sample_first(rng);
        const auto g2 = sample_second(rng);
        const auto a = embed_first(weyl_generator(view.first, g1), view);
        const auto b = embed_second(weyl_generator(view.second, g2), view);
        const auto ab = weyl_mul(a, b, view.whole);
        const auto ba = weyl_mul(b, a, view.whole);
        const auto direct = weyl_generator(view.whole, view.combine(g1, g2));
        if (!weyl_equal(ab, ba, view.whole) || !weyl_equal(ab, direct, view.whole))
            ++report.commutation_failures;

        TensorSum<G1, G2> x;
        for (int f = 0; f < 2; ++f)
            x.factors.push_back(
                {small_sum(view.first, sample_first), small_sum(view.second, sample_second)});
        const auto assembled = tensor_assemble(x, view);
        const auto split = tensor_split(assembled, view);
        if (!weyl_equal(tensor_expand(split, view), tensor_expand(x, view), expansion_group))
            ++report.tensor_roundtrip_failures;
        if (!weyl_equal(tensor_assemble(split, view), assembled, view.whole))
            ++report.algebra_roundtrip_failures;

        auto y = weyl_term(view.whole, sample_coeff(rng),
                           view.combine(sample_first(rng), sample_second(rng)));
        y = weyl_add(y,
                     weyl_term(view.whole, sample_coeff(rng),
                               view.combine(sample_first(rng), sample_second(rng))),
                     view.whole);
        const auto parts = tensor_split(y, view);
        if (!weyl_equal(tensor_assemble(parts, view), y, view.whole))
            ++report.algebra_roundtrip_failures;
        if (tensor_norm_bound(parts) > norm1(y) + 1e-12) ++report.norm_violations;
    }
    return report;
}

}  // namespace adl
