#include "adl/surface.hpp"

#include <sstream>

namespace adl {

namespace {

std::string degree_pair(int p, int q) {
    std::ostringstream os;
    os << "(p=" << p << ", q=" << q << ")";
    return os.str();
}

int pow_sign(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

// Index in Z^n of the congruence kernel {a : m a = 0 mod d}. With
// u m v = s diagonal and b = v^{-1} a ranging over all of Z^n, the condition
// becomes s_i b_i = 0 mod d coordinatewise, so the index is the product of
// d / gcd(s_i, d) over the diagonal.
Int congruence_kernel_index(const IMat& m, const Int& d) {
    SmithDecomposition snf = smith_normal_form(m);
    Int index(1);
    for (const Int& s : snf.diagonal) {
        Int g;
        mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
        index *= d / g;
    }
    return index;
}

// The two torsion groups a linking block pairs, with their generator orders.
struct LinkDomain {
    std::vector<Int> row_orders;
    std::vector<Int> col_orders;
};

LinkDomain link_domain(const SurfaceModel& model, int p) {
    return {model.group(p).invariant_factors(),
            model.group(model.dim + 1 - p).invariant_factors()};
}

void validate_link_block(const SurfaceModel& model, int p, const QMat& l) {
    const LinkDomain dom = link_domain(model, p);
    require(l.rows() == int(dom.row_orders.size()) && l.cols() == int(dom.col_orders.size()),
            "surface: linking block shape mismatch (p=" + std::to_string(p) + ")");
    Int denom_lcm(1);
    for (int i = 0; i < l.rows(); ++i)
        for (int j = 0; j < l.cols(); ++j) {
            const Rat& v = l(i, j);
            require(v >= 0 && v < 1,
                    "surface: linking entries must be reduced mod 1 (p=" + std::to_string(p) + ")");
            Rat killed_row = v * Rat(dom.row_orders[i]);
            Rat killed_col = v * Rat(dom.col_orders[j]);
            killed_row.canonicalize();
            killed_col.canonicalize();
            require(killed_row.get_den() == 1 && killed_col.get_den() == 1,
                    "linking form not well defined on torsion orders (p=" + std::to_string(p) +
                        ")");
            mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), v.get_den().get_mpz_t());
        }

    // Non-degeneracy in both slots: the congruence kernel of the scaled
    // integer matrix must be exactly the lattice of generator orders, which
    // happens precisely when the kernel indices match the group orders.
    IMat n(l.rows(), l.cols());
    for (int i = 0; i < l.rows(); ++i)
        for (int j = 0; j < l.cols(); ++j) {
            Rat scaled = l(i, j) * Rat(denom_lcm);
            scaled.canonicalize();
            n(i, j) = scaled.get_num();
        }
    Int row_group_order(1), col_group_order(1);
    for (const Int& d : dom.row_orders) row_group_order *= d;
    for (const Int& d : dom.col_orders) col_group_order *= d;
    require(congruence_kernel_index(n.transposed(), denom_lcm) == row_group_order &&
                congruence_kernel_index(n, denom_lcm) == col_group_order,
            "linking form degenerate (degree " + std::to_string(p) + ")");
}

}  // namespace

const FgAbGroup& SurfaceModel::group(int degree) const {
    require(degree >= 0 && degree <= dim, "surface: degree out of range");
    return cohomology[size_t(degree)];
}

int SurfaceModel::free_rank(int degree) const { return group(degree).free_rank(); }

int SurfaceModel::torsion_rank(int degree) const { return group(degree).torsion_rank(); }

IMat SurfaceModel::cup_tensor(int p, int q) const {
    require(p >= 0 && q >= 0 && p + q == dim, "surface: cup tensor degrees must sum to dim");
    auto it = cup.find({p, q});
    if (it != cup.end()) return it->second;
    return IMat(free_rank(p), free_rank(q));
}

QMat SurfaceModel::torsion_link(int p) const {
    require(p >= 1 && p <= dim, "surface: linking block degree out of range");
    auto it = link.find(p);
    if (it != link.end()) return it->second;
    return QMat(torsion_rank(p), torsion_rank(dim + 1 - p));
}

void validate_surface(const SurfaceModel& model) {
    require(model.dim >= 0, "surface: negative dimension");
    require(int(model.cohomology.size()) == model.dim + 1,
            "surface: cohomology must list every degree 0..dim");
    require(model.orientation_sign == 1 || model.orientation_sign == -1,
            "surface: orientation must be +1 or -1");

    for (const auto& [key, mat] : model.cup) {
        const auto [p, q] = key;
        require(p >= 0 && q >= 0 && p + q == model.dim,
                "surface: cup tensor degrees must sum to dim " + degree_pair(p, q));
        require(mat.rows() == model.free_rank(p) && mat.cols() == model.free_rank(q),
                "surface: cup tensor shape mismatch " + degree_pair(p, q));
    }
    for (int p = 0; p <= model.dim; ++p) {
        const int q = model.dim - p;
        if (model.free_rank(p) > 0 && model.free_rank(q) > 0)
            require(model.cup.count({p, q}) == 1, "surface: missing cup tensor " + degree_pair(p, q));
    }

    // Graded commutativity ties each tensor to its mirror; checking p <= q
    // covers both directions because the sign is an involution.
    for (int p = 0; 2 * p <= model.dim; ++p) {
        const int q = model.dim - p;
        const IMat a = model.cup_tensor(p, q);
        const IMat b = model.cup_tensor(q, p);
        IMat expected = a.transposed();
        if (pow_sign(long(p) * long(q)) < 0) expected = -expected;
        require(b == expected, "graded commutativity violated " + degree_pair(p, q));
    }

    for (int p = 0; p <= model.dim; ++p) {
        const int q = model.dim - p;
        require(model.free_rank(p) == model.free_rank(q),
                "Poincare duality degenerate (free ranks of degrees " + std::to_string(p) +
                    " and " + std::to_string(q) + " differ)");
        require(det_integer(model.cup_tensor(p, q)) != 0,
                "Poincare duality degenerate (p=" + std::to_string(p) + ")");
    }

    for (int p = 1; p <= model.dim; ++p) {
        const int q = model.dim + 1 - p;
        if (q > model.dim || q < p) continue;
        require(model.group(p).invariant_factors() == model.group(q).invariant_factors(),
                "torsion linking domain mismatch (degrees " + std::to_string(p) + " and " +
                    std::to_string(q) + ")");
    }

    for (const auto& [p, l] : model.link) {
        require(p >= 1 && p <= model.dim,
                "surface: linking block degree out of range (p=" + std::to_string(p) + ")");
        validate_link_block(model, p, l);
    }
    for (int p = 1; p <= model.dim; ++p) {
        const int q = model.dim + 1 - p;
        if (q > model.dim) continue;
        if (model.torsion_rank(p) > 0 && model.torsion_rank(q) > 0)
            require(model.link.count(p) == 1,
                    "surface: missing linking block (p=" + std::to_string(p) + ")");
        // Symmetry against the mirror block, with the degree-product sign.
        const QMat lp = model.torsion_link(p);
        const QMat lq = model.torsion_link(q);
        const int sign = pow_sign(long(p) * long(q));
        for (int i = 0; i < lp.rows(); ++i)
            for (int j = 0; j < lp.cols(); ++j) {
                Rat mirrored = lq(j, i);
                if (sign < 0) mirrored = rat_mod1(-mirrored);
                require(lp(i, j) == mirrored,
                        "linking form symmetry violated (p=" + std::to_string(p) + ")");
            }
    }
}

namespace {

FgAbGroup free_group(int rank) { return FgAbGroup::from_invariant_factors({}, rank); }

FgAbGroup cyclic_group(long order) {
    return FgAbGroup::from_invariant_factors({Int(order)}, 0);
}

IMat unit1() { return IMat{{Int(1)}}; }

SurfaceModel make_circle() {
    SurfaceModel m;
    m.name = "circle";
    m.dim = 1;
    m.cohomology = {free_group(1), free_group(1)};
    m.cup[{0, 1}] = unit1();
    m.cup[{1, 0}] = unit1();
    return m;
}

SurfaceModel make_torus2() {
    SurfaceModel m;
    m.name = "torus2";
    m.dim = 2;
    m.cohomology = {free_group(1), free_group(2), free_group(1)};
    m.cup[{0, 2}] = unit1();
    m.cup[{2, 0}] = unit1();
    // Intersection form in the (a, b) loop basis: a cup b = top, b cup a = -top.
    m.cup[{1, 1}] = IMat{{Int(0), Int(1)}, {Int(-1), Int(0)}};
    return m;
}

SurfaceModel make_torus3() {
    SurfaceModel m;
    m.name = "torus3";
    m.dim = 3;
    m.cohomology = {free_group(1), free_group(3), free_group(3), free_group(1)};
    m.cup[{0, 3}] = unit1();
    m.cup[{3, 0}] = unit1();
    // Degree-2 generators are chosen dual to the degree-1 ones (dx with
    // dy^dz, and cyclic), making the middle pairing the identity.
    m.cup[{1, 2}] = IMat::identity(3);
    m.cup[{2, 1}] = IMat::identity(3);
    return m;
}

SurfaceModel make_sphere2() {
    SurfaceModel m;
    m.name = "sphere2";
    m.dim = 2;
    m.cohomology = {free_group(1), free_group(0), free_group(1)};
    m.cup[{0, 2}] = unit1();
    m.cup[{2, 0}] = unit1();
    return m;
}

SurfaceModel make_s1xs2() {
    SurfaceModel m;
    m.name = "s1xs2";
    m.dim = 3;
    m.cohomology = {free_group(1), free_group(1), free_group(1), free_group(1)};
    m.cup[{0, 3}] = unit1();
    m.cup[{3, 0}] = unit1();
    m.cup[{1, 2}] = unit1();
    m.cup[{2, 1}] = unit1();
    return m;
}

// Lens space L(p,1), oriented so the canonical generator of the degree-2
// torsion self-links to +1/p (the (-p)-surgery-on-the-unknot orientation).
// rp3 is the p = 2 entry under its usual name.
SurfaceModel make_lens(long p, const std::string& name) {
    SurfaceModel m;
    m.name = name;
    m.dim = 3;
    m.cohomology = {free_group(1), free_group(0), cyclic_group(p), free_group(1)};
    m.cup[{0, 3}] = unit1();
    m.cup[{3, 0}] = unit1();
    m.link[2] = QMat{{make_rat(Int(1), Int(p))}};
    return m;
}

}  // namespace

SurfaceModel builtin_surface(const std::string& name) {
    SurfaceModel m;
    if (name == "circle")
        m = make_circle();
    else if (name == "torus2")
        m = make_torus2();
    else if (name == "torus3")
        m = make_torus3();
    else if (name == "sphere2")
        m = make_sphere2();
    else if (name == "s1xs2")
        m = make_s1xs2();
    else if (name == "rp3")
        m = make_lens(2, "rp3");
    else if (name.rfind("lens(", 0) == 0 && name.back() == ')') {
        const std::string digits = name.substr(5, name.size() - 6);
        require(!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos,
                "surface: unknown builtin name '" + name + "'");
        const long p = std::stol(digits);
        require(p >= 2 && p <= 12, "surface: lens order out of range (2..12)");
        m = make_lens(p, name);
    } else {
        fail("surface: unknown builtin name '" + name + "'");
    }
    validate_surface(m);
    return m;
}

std::vector<std::string> builtin_surface_names() {
    std::vector<std::string> names = {"circle", "torus2", "torus3", "sphere2", "s1xs2", "rp3"};
    for (int p = 2; p <= 12; ++p) names.push_back("lens(" + std::to_string(p) + ")");
    return names;
}

Int evaluate_top(const std::vector<Int>& class_coords, const SurfaceModel& model) {
    require(int(class_coords.size()) == model.free_rank(model.dim),
            "evaluate_top: wrong degree (expected coordinates on the free generators of the top "
            "group)");
    require(model.free_rank(0) >= 1, "evaluate_top: model has no unit class");
    // The unit row of the (0, dim) cup tensor is exactly the evaluation of the
    // top generators against the fundamental class.
    const IMat c = model.cup_tensor(0, model.dim);
    Int total(0);
    for (int j = 0; j < c.cols(); ++j) total += c(0, j) * class_coords[size_t(j)];
    return model.orientation_sign > 0 ? total : Int(-total);
}

bool surface_equal(const SurfaceModel& a, const SurfaceModel& b) {
    if (a.name != b.name || a.dim != b.dim || a.orientation_sign != b.orientation_sign)
        return false;
    if (a.cohomology.size() != b.cohomology.size()) return false;
    for (size_t i = 0; i < a.cohomology.size(); ++i)
        if (!a.cohomology[i].same_shape(b.cohomology[i])) return false;
    return a.cup == b.cup && a.link == b.link;
}

SpacetimeModel::SpacetimeModel(SurfaceModel surface_, int m_, int k_)
    : surface(std::move(surface_)), m(m_), k(k_) {
    require(m == surface.dim + 1, "spacetime: m must equal surface dimension + 1");
    require(k >= 1 && k <= m - 1, "spacetime: degree k must satisfy 1 <= k <= m-1");
    for (int degree : {k - 1, k, m - k - 1, m - k})
        require(degree >= 0 && degree <= surface.dim,
                "spacetime: sector degree " + std::to_string(degree) + " out of range");
}

}  // namespace adl
