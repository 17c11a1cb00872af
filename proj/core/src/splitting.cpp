#include <json.hpp>

#include "adl/rng.hpp"
#include "adl/sectors.hpp"
#include "json_util.hpp"

namespace adl {

namespace {

using nlohmann::json;

const std::string kCtx = "lift JSON";

int self_symmetry_sign(const SpacetimeModel& st) { return st.k % 2 == 0 ? 1 : -1; }

void require_unit_interval(const QMat& m, const char* what) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            require(m(i, j) >= 0 && m(i, j) < 1,
                    std::string("lift pairing: ") + what + " entries must lie in [0,1)");
}

// Dual basis rows in degree-(m-k-1) coordinates: row i pairs to delta_ij
// against the degree-k generators once the cup evaluation (including the
// orientation sign) is applied.
QMat dual_basis_rows(const SpacetimeModel& st) {
    const int n = st.surface.free_rank(st.deg_z());
    require(st.surface.free_rank(st.deg_ut()) == n, "splitting: degenerate duality pairing");
    if (n == 0) return QMat(0, 0);
    const QMat c = to_rational(st.surface.cup_tensor(st.deg_ut(), st.deg_z()));
    require(det_rational(c) != 0, "splitting: degenerate duality pairing");
    QMat inv = inverse_rational(c);
    if (st.surface.orientation_sign < 0) inv = -inv;
    return inv;
}

// Evaluate corrected-lift coordinate rows against the degree-k generators:
// entry (i, j) is the pairing of row i with generator j.
QMat evaluate_rows(const QMat& rows, const SpacetimeModel& st) {
    QMat vals = rows * to_rational(st.surface.cup_tensor(st.deg_ut(), st.deg_z()));
    if (st.surface.orientation_sign < 0) vals = -vals;
    return vals;
}

// Distance from 0 mod 1, as an exact rational in [0, 1/2].
Rat circle_distance(const Rat& v) {
    const Rat f = rat_mod1(v);
    return f <= make_rat(Int(1), Int(2)) ? f : Rat(1) - f;
}

}  // namespace

void validate_lift_pairing(const LiftPairingData& data, const SpacetimeModel& st) {
    const int n = st.surface.free_rank(st.deg_z());
    const int nt = st.surface.free_rank(st.deg_zt());
    require(data.c.rows() == nt && data.c.cols() == n,
            "lift pairing: matrix shape does not match the free ranks");
    require_unit_interval(data.c, "mixed");
    if (data.self_pairings) {
        require(st.m == 2 * st.k, "lift pairing: self pairings are only meaningful when m = 2k");
        const QMat& s = *data.self_pairings;
        require(s.rows() == n && s.cols() == n,
                "lift pairing: self-pairing shape does not match the free rank");
        require_unit_interval(s, "self");
        const int sign = self_symmetry_sign(st);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Rat mirrored = sign > 0 ? s(j, i) : -s(j, i);
                require(s(i, j) == rat_mod1(mirrored),
                        "lift pairing: self pairings violate their symmetry");
            }
    }
}

LiftPairingData lift_pairing_seeded(const SpacetimeModel& st, std::uint64_t seed) {
    Rng root(seed);
    const int n = st.surface.free_rank(st.deg_z());
    const int nt = st.surface.free_rank(st.deg_zt());

    LiftPairingData data;
    data.c = QMat(nt, n);
    Rng mixed = root.stream("lift-c");
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < n; ++j) data.c(i, j) = mixed.rational01(24);

    if (st.m == 2 * st.k) {
        QMat s(n, n);
        Rng self = root.stream("lift-self");
        if (self_symmetry_sign(st) > 0) {
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    s(i, j) = self.rational01(24);
                    s(j, i) = s(i, j);
                }
        } else {
            // Odd k: the diagonal stays zero (the only other consistent
            // value, 1/2, admits no correction) and the lower triangle is
            // determined by the upper one.
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    s(i, j) = self.rational01(24);
                    s(j, i) = rat_mod1(-s(i, j));
                }
        }
        data.self_pairings = std::move(s);
    }

    validate_lift_pairing(data, st);
    return data;
}

LiftPairingData lift_pairing_from_json(const std::string& text, const SpacetimeModel& st) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(kCtx + ": parse error: " + e.what());
    }
    LiftPairingData data;
    try {
        require(doc.is_object(), kCtx + ": top level must be an object");
        data.c = jsondetail::rat_matrix_from_json(doc, "c", kCtx);
        if (doc.contains("self_num") || doc.contains("self_den"))
            data.self_pairings = jsondetail::rat_matrix_from_json(doc, "self", kCtx);
    } catch (const json::exception& e) {
        fail(kCtx + ": malformed document: " + e.what());
    }
    validate_lift_pairing(data, st);
    return data;
}

std::string lift_pairing_to_json(const LiftPairingData& data) {
    json doc = json::object();
    jsondetail::rat_matrix_to_json(doc, "c", data.c);
    if (data.self_pairings) jsondetail::rat_matrix_to_json(doc, "self", *data.self_pairings);
    return doc.dump(2);
}

QMat correction_on_generators(const SplittingResult& r) {
    return r.chi_correction * r.dual_basis;
}

SplittingResult solve_chi_splitting(const LiftPairingData& lifts, const SpacetimeModel& st) {
    validate_lift_pairing(lifts, st);

    SplittingResult result;
    result.chi_correction = lifts.c;
    result.dual_basis = dual_basis_rows(st);
    result.self_dual = false;

    // Residual check through the actual coordinates: subtracting the
    // correction changes each mixed pairing by its evaluation against the
    // generators, which must land back on 0 mod 1.
    const QMat vals = evaluate_rows(correction_on_generators(result), st);
    Rat worst(0);
    for (int i = 0; i < vals.rows(); ++i)
        for (int j = 0; j < vals.cols(); ++j) {
            const Rat d = circle_distance(lifts.c(i, j) - vals(i, j));
            if (d > worst) worst = d;
        }
    result.residual = worst;
    return result;
}

SplittingResult solve_selfdual_chi(const LiftPairingData& lifts, const SpacetimeModel& st) {
    require(st.m == 2 * st.k, "self-dual splitting requires m = 2k");
    require(lifts.self_pairings.has_value(),
            "self-dual splitting needs the degree-k self pairings");
    validate_lift_pairing(lifts, st);

    const QMat& c = *lifts.self_pairings;
    const int n = c.rows();
    const int sign = self_symmetry_sign(st);
    const Rat half = make_rat(Int(1), Int(2));

    // Halving only cancels a pairing whose two mirror contributions add up,
    // so the coefficients need a lift of c that is genuinely (anti)symmetric
    // over the reals, not just mod 1. For even k the [0,1) representatives
    // are already symmetric. For odd k the off-diagonal representatives pair
    // up as x and 1-x, so the antisymmetric lift keeps the upper entry and
    // negates it below the diagonal; a nonzero diagonal entry (necessarily
    // 1/2) cancels out of the corrected pairing entirely and no choice of
    // coefficient can remove it.
    QMat chat(n, n);
    if (sign > 0) {
        chat = c;
    } else {
        for (int i = 0; i < n; ++i)
            require(c(i, i) == 0,
                    "self-dual splitting obstructed: a diagonal self-pairing of 1/2 admits no "
                    "correction (choose lifts with vanishing diagonal pairings instead)");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                chat(i, j) = c(i, j);
                chat(j, i) = -c(i, j);
            }
    }

    SplittingResult result;
    result.chi_correction = QMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) result.chi_correction(i, j) = half * chat(i, j);
    result.dual_basis = dual_basis_rows(st);
    result.self_dual = true;

    // Post-correction self pairings, recomputed from the coordinates: the
    // correction on lift i shifts (i,j) by its evaluation against generator
    // j, and the correction on lift j shifts it by the mirrored evaluation
    // with the graded-symmetry sign.
    const QMat vals = evaluate_rows(correction_on_generators(result), st);
    Rat worst(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rat corrected = c(i, j) - vals(i, j) - Rat(sign) * vals(j, i);
            const Rat d = circle_distance(corrected);
            if (d > worst) worst = d;
        }
    result.residual = worst;
    return result;
}

TopFreeElement solve_delta_corrections(const std::vector<CircleValue>& character_z,
                                       const std::vector<CircleValue>& character_zt,
                                       const SpacetimeModel& st) {
    const SurfaceModel& s = st.surface;
    require(int(character_z.size()) == s.free_rank(st.deg_z()) &&
                int(character_zt.size()) == s.free_rank(st.deg_zt()),
            "delta solve: character values must cover the flux generators");

    std::vector<Rat> a, b;
    a.reserve(character_z.size());
    b.reserve(character_zt.size());
    for (const auto& v : character_z) {
        require(v.is_exact(), "delta solve: character values must be exact");
        a.push_back(v.rational());
    }
    for (const auto& v : character_zt) {
        require(v.is_exact(), "delta solve: character values must be exact");
        b.push_back(v.rational());
    }

    const Rat o(st.surface.orientation_sign);
    const Rat cross(st.k % 2 == 0 || (st.m - st.k) % 2 == 0 ? 1 : -1);

    // sigma((u,ut,0,0),(0,0,z,zt)) = o * (<ut,C z> - cross * <u,C' zt>), so
    // the two halves of the character decouple into transposed solves.
    TopFreeElement delta = top_free_zero(st);
    if (!a.empty()) {
        const QMat c = to_rational(s.cup_tensor(st.deg_ut(), st.deg_z()));
        require(det_rational(c) != 0, "splitting: degenerate duality pairing");
        std::vector<Rat> rhs(a.size());
        for (size_t i = 0; i < a.size(); ++i) rhs[i] = o * a[i];
        const std::vector<Rat> ut = inverse_rational(c.transposed()).mul_vec(rhs);
        for (size_t i = 0; i < ut.size(); ++i) delta.ut[i] = CircleValue::exact(ut[i]);
    }
    if (!b.empty()) {
        const QMat c = to_rational(s.cup_tensor(st.deg_u(), st.deg_zt()));
        require(det_rational(c) != 0, "splitting: degenerate duality pairing");
        std::vector<Rat> rhs(b.size());
        for (size_t i = 0; i < b.size(); ++i) rhs[i] = -cross * o * b[i];
        const std::vector<Rat> u = inverse_rational(c.transposed()).mul_vec(rhs);
        for (size_t i = 0; i < u.size(); ++i) delta.u[i] = CircleValue::exact(u[i]);
    }

    // Verify against the pairing itself on every flux generator.
    for (size_t i = 0; i < a.size(); ++i) {
        TopFreeElement probe = top_free_zero(st);
        probe.z[i] = 1;
        require(sigma_free(delta, probe, st).rational() == rat_mod1(a[i]),
                "delta solve: verification against the pairing failed");
    }
    for (size_t j = 0; j < b.size(); ++j) {
        TopFreeElement probe = top_free_zero(st);
        probe.zt[j] = 1;
        require(sigma_free(delta, probe, st).rational() == rat_mod1(b[j]),
                "delta solve: verification against the pairing failed");
    }
    return delta;
}

AssembledObservables::AssembledObservables(SpacetimeModel st, SplittingResult chi,
                                           std::optional<SplittingResult> self_chi,
                                           DynPairing dyn)
    : st_(std::move(st)), chi_(std::move(chi)), self_chi_(std::move(self_chi)),
      dyn_(std::move(dyn)) {
    require(chi_.residual == 0, "assembled observables: un-validated splitting (nonzero residual)");
    if (self_chi_)
        require(self_chi_->residual == 0,
                "assembled observables: un-validated splitting (nonzero residual)");
}

ObservableElement AssembledObservables::element(std::optional<int> dyn, TopFreeElement free_part,
                                                TopTorElement tor_part) const {
    ObservableElement e;
    e.dyn = dyn;
    e.free_part = top_free_element(std::move(free_part.u), std::move(free_part.ut),
                                   std::move(free_part.z), std::move(free_part.zt), st_);
    e.tor_part = top_tor_element(std::move(tor_part.t), std::move(tor_part.tt), st_);
    return e;
}

CircleValue AssembledObservables::sigma_total(const ObservableElement& a,
                                              const ObservableElement& b) const {
    CircleValue total = sigma_free(a.free_part, b.free_part, st_) +
                        sigma_tor(a.tor_part, b.tor_part, st_);
    if (a.dyn && b.dyn && dyn_) total = total + dyn_(*a.dyn, *b.dyn);
    return total;
}

}  // namespace adl
