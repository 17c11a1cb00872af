#include "adl/sectors.hpp"

namespace adl {

namespace {

// Remainder in [0, d) regardless of the sign of v.
Int positive_mod(const Int& v, const Int& d) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
    return r;
}

// (-1)^{k(m-k)}, the sign weaving the two cup pairings together.
int cross_sign(const SpacetimeModel& st) {
    return (long(st.k) * long(st.m - st.k)) % 2 == 0 ? 1 : -1;
}

void check_free_shape(const TopFreeElement& a, const SpacetimeModel& st, const char* what) {
    const SurfaceModel& s = st.surface;
    require(int(a.u.size()) == s.free_rank(st.deg_u()) &&
                int(a.ut.size()) == s.free_rank(st.deg_ut()) &&
                int(a.z.size()) == s.free_rank(st.deg_z()) &&
                int(a.zt.size()) == s.free_rank(st.deg_zt()),
            std::string(what) + ": element does not match the model's sector degrees");
}

void check_tor_shape(const TopTorElement& a, const SpacetimeModel& st, const char* what) {
    const SurfaceModel& s = st.surface;
    require(int(a.t.size()) == s.torsion_rank(st.deg_z()) &&
                int(a.tt.size()) == s.torsion_rank(st.deg_zt()),
            std::string(what) + ": element does not match the model's torsion ranks");
}

std::vector<Int> reduce_torsion(std::vector<Int> x, const std::vector<Int>& factors) {
    for (size_t i = 0; i < x.size(); ++i) x[i] = positive_mod(x[i], factors[i]);
    return x;
}

// Lexicographic comparison helpers for the exact orders.
int compare_rat(const Rat& a, const Rat& b) { return a < b ? -1 : (b < a ? 1 : 0); }

int compare_int_vec(const std::vector<Int>& a, const std::vector<Int>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

int compare_circle_vec(const std::vector<CircleValue>& a, const std::vector<CircleValue>& b,
                       const char* what) {
    for (size_t i = 0; i < a.size(); ++i) {
        require(a[i].is_exact() && b[i].is_exact(),
                std::string(what) + ": ordering needs exact holonomies");
        if (int c = compare_rat(a[i].rational(), b[i].rational())) return c;
    }
    return 0;
}

}  // namespace

TopFreeElement top_free_zero(const SpacetimeModel& st) {
    const SurfaceModel& s = st.surface;
    return TopFreeElement{
        std::vector<CircleValue>(size_t(s.free_rank(st.deg_u()))),
        std::vector<CircleValue>(size_t(s.free_rank(st.deg_ut()))),
        std::vector<Int>(size_t(s.free_rank(st.deg_z())), Int(0)),
        std::vector<Int>(size_t(s.free_rank(st.deg_zt())), Int(0)),
    };
}

TopFreeElement top_free_element(std::vector<CircleValue> u, std::vector<CircleValue> ut,
                                std::vector<Int> z, std::vector<Int> zt,
                                const SpacetimeModel& st) {
    TopFreeElement a{std::move(u), std::move(ut), std::move(z), std::move(zt)};
    check_free_shape(a, st, "sector element");
    return a;
}

TopFreeElement top_free_rational(const std::vector<Rat>& u, const std::vector<Rat>& ut,
                                 std::vector<Int> z, std::vector<Int> zt,
                                 const SpacetimeModel& st) {
    std::vector<CircleValue> cu, cut;
    cu.reserve(u.size());
    cut.reserve(ut.size());
    for (const Rat& r : u) cu.push_back(CircleValue::exact(r));
    for (const Rat& r : ut) cut.push_back(CircleValue::exact(r));
    return top_free_element(std::move(cu), std::move(cut), std::move(z), std::move(zt), st);
}

TopTorElement top_tor_zero(const SpacetimeModel& st) {
    const SurfaceModel& s = st.surface;
    return TopTorElement{
        std::vector<Int>(size_t(s.torsion_rank(st.deg_z())), Int(0)),
        std::vector<Int>(size_t(s.torsion_rank(st.deg_zt())), Int(0)),
    };
}

TopTorElement top_tor_element(std::vector<Int> t, std::vector<Int> tt,
                              const SpacetimeModel& st) {
    TopTorElement a{std::move(t), std::move(tt)};
    check_tor_shape(a, st, "sector element");
    a.t = reduce_torsion(std::move(a.t), st.surface.group(st.deg_z()).invariant_factors());
    a.tt = reduce_torsion(std::move(a.tt), st.surface.group(st.deg_zt()).invariant_factors());
    return a;
}

TopFreeElement top_free_add(const TopFreeElement& a, const TopFreeElement& b) {
    require(a.u.size() == b.u.size() && a.ut.size() == b.ut.size() && a.z.size() == b.z.size() &&
                a.zt.size() == b.zt.size(),
            "sector sum: mismatched shapes");
    TopFreeElement r = a;
    for (size_t i = 0; i < r.u.size(); ++i) r.u[i] = r.u[i] + b.u[i];
    for (size_t i = 0; i < r.ut.size(); ++i) r.ut[i] = r.ut[i] + b.ut[i];
    for (size_t i = 0; i < r.z.size(); ++i) r.z[i] += b.z[i];
    for (size_t i = 0; i < r.zt.size(); ++i) r.zt[i] += b.zt[i];
    return r;
}

TopFreeElement top_free_negate(const TopFreeElement& a) {
    TopFreeElement r = a;
    for (auto& v : r.u) v = -v;
    for (auto& v : r.ut) v = -v;
    for (auto& v : r.z) v = -v;
    for (auto& v : r.zt) v = -v;
    return r;
}

bool top_free_is_zero(const TopFreeElement& a) {
    for (const auto& v : a.u)
        if (!(v.is_exact() ? v.rational() == 0 : v.is_zero())) return false;
    for (const auto& v : a.ut)
        if (!(v.is_exact() ? v.rational() == 0 : v.is_zero())) return false;
    for (const auto& v : a.z)
        if (v != 0) return false;
    for (const auto& v : a.zt)
        if (v != 0) return false;
    return true;
}

TopTorElement top_tor_add(const TopTorElement& a, const TopTorElement& b,
                          const SpacetimeModel& st) {
    check_tor_shape(a, st, "sector sum");
    check_tor_shape(b, st, "sector sum");
    TopTorElement r = a;
    for (size_t i = 0; i < r.t.size(); ++i) r.t[i] += b.t[i];
    for (size_t i = 0; i < r.tt.size(); ++i) r.tt[i] += b.tt[i];
    r.t = reduce_torsion(std::move(r.t), st.surface.group(st.deg_z()).invariant_factors());
    r.tt = reduce_torsion(std::move(r.tt), st.surface.group(st.deg_zt()).invariant_factors());
    return r;
}

TopTorElement top_tor_negate(const TopTorElement& a, const SpacetimeModel& st) {
    check_tor_shape(a, st, "sector negation");
    TopTorElement r = a;
    for (auto& v : r.t) v = -v;
    for (auto& v : r.tt) v = -v;
    r.t = reduce_torsion(std::move(r.t), st.surface.group(st.deg_z()).invariant_factors());
    r.tt = reduce_torsion(std::move(r.tt), st.surface.group(st.deg_zt()).invariant_factors());
    return r;
}

bool top_tor_is_zero(const TopTorElement& a) {
    for (const auto& v : a.t)
        if (v != 0) return false;
    for (const auto& v : a.tt)
        if (v != 0) return false;
    return true;
}

bool top_free_equal(const TopFreeElement& a, const TopFreeElement& b) {
    if (a.u.size() != b.u.size() || a.ut.size() != b.ut.size() || a.z.size() != b.z.size() ||
        a.zt.size() != b.zt.size())
        return false;
    for (size_t i = 0; i < a.u.size(); ++i)
        if (!CircleValue::eq(a.u[i], b.u[i], 0.0)) return false;
    for (size_t i = 0; i < a.ut.size(); ++i)
        if (!CircleValue::eq(a.ut[i], b.ut[i], 0.0)) return false;
    return a.z == b.z && a.zt == b.zt;
}

int top_free_compare(const TopFreeElement& a, const TopFreeElement& b) {
    require(a.u.size() == b.u.size() && a.ut.size() == b.ut.size() && a.z.size() == b.z.size() &&
                a.zt.size() == b.zt.size(),
            "sector order: mismatched shapes");
    if (int c = compare_circle_vec(a.u, b.u, "sector order")) return c;
    if (int c = compare_circle_vec(a.ut, b.ut, "sector order")) return c;
    if (int c = compare_int_vec(a.z, b.z)) return c;
    return compare_int_vec(a.zt, b.zt);
}

bool top_tor_equal(const TopTorElement& a, const TopTorElement& b) {
    return a.t == b.t && a.tt == b.tt;
}

int top_tor_compare(const TopTorElement& a, const TopTorElement& b) {
    require(a.t.size() == b.t.size() && a.tt.size() == b.tt.size(),
            "sector order: mismatched shapes");
    if (int c = compare_int_vec(a.t, b.t)) return c;
    return compare_int_vec(a.tt, b.tt);
}

CircleValue sigma_free(const TopFreeElement& a, const TopFreeElement& b,
                       const SpacetimeModel& st) {
    check_free_shape(a, st, "sigma_free");
    check_free_shape(b, st, "sigma_free");
    const IMat c_ut_z = st.surface.cup_tensor(st.deg_ut(), st.deg_z());
    const IMat c_u_zt = st.surface.cup_tensor(st.deg_u(), st.deg_zt());
    const Int s(cross_sign(st));
    const CircleValue total = pontryagin_pair(a.ut, b.z, c_ut_z) +
                              pontryagin_pair(a.u, b.zt, c_u_zt).scaled(-s) +
                              (-pontryagin_pair(b.ut, a.z, c_ut_z)) +
                              pontryagin_pair(b.u, a.zt, c_u_zt).scaled(s);
    return total.scaled(Int(st.surface.orientation_sign));
}

CircleValue sigma_tor(const TopTorElement& a, const TopTorElement& b, const SpacetimeModel& st) {
    check_tor_shape(a, st, "sigma_tor");
    check_tor_shape(b, st, "sigma_tor");
    const QMat link = st.surface.torsion_link(st.deg_zt());
    Rat total(0);
    for (int i = 0; i < link.rows(); ++i)
        for (int j = 0; j < link.cols(); ++j) {
            if (link(i, j) == 0) continue;
            total += link(i, j) * Rat(a.tt[size_t(i)] * b.t[size_t(j)] -
                                      b.tt[size_t(i)] * a.t[size_t(j)]);
        }
    if (st.surface.orientation_sign < 0) total = -total;
    return CircleValue::exact(total);
}

SpacetimeModel dual_model(const SpacetimeModel& st) {
    return SpacetimeModel(st.surface, st.m, st.m - st.k);
}

TopFreeElement duality_free(const TopFreeElement& a, const SpacetimeModel& st) {
    check_free_shape(a, st, "duality");
    const Int s(-cross_sign(st));
    TopFreeElement r;
    r.u = a.ut;
    r.ut.reserve(a.u.size());
    for (const auto& v : a.u) r.ut.push_back(v.scaled(s));
    r.z = a.zt;
    r.zt.reserve(a.z.size());
    for (const auto& v : a.z) r.zt.push_back(s * v);
    return r;
}

TopTorElement duality_tor(const TopTorElement& a, const SpacetimeModel& st) {
    check_tor_shape(a, st, "duality");
    const Int s(-cross_sign(st));
    TopTorElement r;
    r.t = a.tt;
    r.tt.reserve(a.t.size());
    for (const auto& v : a.t) r.tt.push_back(s * v);
    r.tt = reduce_torsion(std::move(r.tt), st.surface.group(st.deg_z()).invariant_factors());
    return r;
}

}  // namespace adl
