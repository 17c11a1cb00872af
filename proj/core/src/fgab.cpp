#include "adl/fgab.hpp"

#include <sstream>

namespace adl {

FgAbGroup FgAbGroup::from_invariant_factors(std::vector<Int> factors, int free_rank) {
    require(free_rank >= 0, "FgAbGroup: negative free rank");
    FgAbGroup g;
    for (size_t i = 0; i < factors.size(); ++i) {
        require(factors[i] >= 1, "FgAbGroup: invariant factor must be >= 1");
        if (i + 1 < factors.size())
            require(factors[i + 1] % factors[i] == 0,
                    "FgAbGroup: invariant factors must form a divisibility chain");
        if (factors[i] > 1) g.factors_.push_back(factors[i]);
    }
    g.free_rank_ = free_rank;
    return g;
}

FgAbGroup FgAbGroup::from_presentation(const IMat& relations) {
    const int generators = relations.cols();
    SmithDecomposition snf = smith_normal_form(relations);

    FgAbGroup g;
    PresentationData pres;
    pres.relations = relations;
    pres.snf = snf;

    // In the Smith generator basis the relation lattice is spanned by
    // d_i * e_i, so coordinates with d_i = 1 die, d_i >= 2 become torsion and
    // the rest stay free.
    const int nmin = int(snf.diagonal.size());
    for (int i = 0; i < nmin; ++i) {
        if (snf.diagonal[i] > 1) {
            pres.torsion_positions.push_back(i);
            g.factors_.push_back(snf.diagonal[i]);
        } else if (snf.diagonal[i] == 0) {
            pres.free_positions.push_back(i);
        }
    }
    for (int i = nmin; i < generators; ++i) pres.free_positions.push_back(i);
    g.free_rank_ = int(pres.free_positions.size());
    g.pres_ = std::move(pres);
    return g;
}

std::optional<Int> FgAbGroup::order() const {
    if (free_rank_ > 0) return std::nullopt;
    Int n(1);
    for (const Int& d : factors_) n *= d;
    return n;
}

GroupElement FgAbGroup::zero() const {
    GroupElement e;
    e.torsion.assign(factors_.size(), Int(0));
    e.free_part.assign(free_rank_, Int(0));
    return e;
}

GroupElement FgAbGroup::canonicalize(GroupElement e) const {
    require(int(e.torsion.size()) == torsion_rank() && int(e.free_part.size()) == free_rank_,
            "FgAbGroup: element has wrong coordinate shape");
    for (size_t i = 0; i < factors_.size(); ++i) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), e.torsion[i].get_mpz_t(), factors_[i].get_mpz_t());
        e.torsion[i] = r;
    }
    return e;
}

GroupElement FgAbGroup::element(std::vector<Int> torsion, std::vector<Int> free_part) const {
    GroupElement e;
    e.torsion = std::move(torsion);
    e.free_part = std::move(free_part);
    return canonicalize(std::move(e));
}

GroupElement FgAbGroup::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement e = a;
    for (size_t i = 0; i < e.torsion.size(); ++i) e.torsion[i] += b.torsion[i];
    for (size_t i = 0; i < e.free_part.size(); ++i) e.free_part[i] += b.free_part[i];
    return canonicalize(std::move(e));
}

GroupElement FgAbGroup::negate(const GroupElement& a) const {
    GroupElement e = a;
    for (auto& x : e.torsion) x = -x;
    for (auto& x : e.free_part) x = -x;
    return canonicalize(std::move(e));
}

GroupElement FgAbGroup::scale(const Int& n, const GroupElement& a) const {
    GroupElement e = a;
    for (auto& x : e.torsion) x *= n;
    for (auto& x : e.free_part) x *= n;
    return canonicalize(std::move(e));
}

bool FgAbGroup::is_zero(const GroupElement& a) const {
    for (const auto& x : a.torsion)
        if (x != 0) return false;
    for (const auto& x : a.free_part)
        if (x != 0) return false;
    return true;
}

int FgAbGroup::compare(const GroupElement& a, const GroupElement& b) const {
    for (size_t i = 0; i < a.torsion.size(); ++i) {
        int c = cmp(a.torsion[i], b.torsion[i]);
        if (c != 0) return c;
    }
    for (size_t i = 0; i < a.free_part.size(); ++i) {
        int c = cmp(a.free_part[i], b.free_part[i]);
        if (c != 0) return c;
    }
    return 0;
}

GroupElement FgAbGroup::project_from_presentation(const std::vector<Int>& generator_coords) const {
    require(pres_.has_value(), "FgAbGroup: no presentation attached");
    const auto& p = *pres_;
    require(int(generator_coords.size()) == p.relations.cols(),
            "FgAbGroup: generator coordinate size mismatch");
    // Row vectors transform by V, so column vectors transform by Vᵀ.
    std::vector<Int> y = p.snf.v.transposed().mul_vec(generator_coords);
    GroupElement e;
    for (int i : p.torsion_positions) e.torsion.push_back(y[i]);
    for (int i : p.free_positions) e.free_part.push_back(y[i]);
    return canonicalize(std::move(e));
}

std::string FgAbGroup::describe() const {
    std::ostringstream os;
    bool first = true;
    for (const Int& d : factors_) {
        if (!first) os << " + ";
        os << "Z/" << d.get_str();
        first = false;
    }
    if (free_rank_ > 0) {
        if (!first) os << " + ";
        os << "Z";
        if (free_rank_ > 1) os << "^" << free_rank_;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

GroupHom::GroupHom(FgAbGroup source, FgAbGroup target, IMat matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    const int sr = source_.torsion_rank() + source_.free_rank();
    const int tr = target_.torsion_rank() + target_.free_rank();
    require(matrix_.rows() == tr && matrix_.cols() == sr, "GroupHom: matrix shape mismatch");
    // Well-definedness: each source relation d_i e_i must map into a target
    // relation, i.e. d_i * column_i vanishes in the target.
    for (int i = 0; i < source_.torsion_rank(); ++i) {
        const Int& d = source_.invariant_factors()[i];
        for (int j = 0; j < tr; ++j) {
            Int v = d * matrix_(j, i);
            if (j < target_.torsion_rank()) {
                require(v % target_.invariant_factors()[j] == 0,
                        "GroupHom: not well-defined on torsion generators");
            } else {
                require(v == 0, "GroupHom: torsion generator maps to infinite-order element");
            }
        }
    }
}

GroupElement GroupHom::apply(const GroupElement& e) const {
    std::vector<Int> x;
    x.reserve(e.torsion.size() + e.free_part.size());
    x.insert(x.end(), e.torsion.begin(), e.torsion.end());
    x.insert(x.end(), e.free_part.begin(), e.free_part.end());
    std::vector<Int> y = matrix_.mul_vec(x);
    GroupElement out;
    out.torsion.assign(y.begin(), y.begin() + target_.torsion_rank());
    out.free_part.assign(y.begin() + target_.torsion_rank(), y.end());
    return target_.canonicalize(std::move(out));
}

GroupHom GroupHom::compose_after(const GroupHom& inner) const {
    require(inner.target_.same_shape(source_), "GroupHom: composition domain mismatch");
    return GroupHom(inner.source_, target_, matrix_ * inner.matrix_);
}

FreeTorsionSplit free_torsion_split(const FgAbGroup& g) {
    FgAbGroup free_part = FgAbGroup::from_invariant_factors({}, g.free_rank());
    FgAbGroup torsion_part = FgAbGroup::from_invariant_factors(g.invariant_factors(), 0);
    // Section of the quotient onto the free summand: coordinate inclusion.
    IMat sec(g.torsion_rank() + g.free_rank(), g.free_rank());
    for (int i = 0; i < g.free_rank(); ++i) sec(g.torsion_rank() + i, i) = 1;
    return FreeTorsionSplit{free_part, torsion_part, GroupHom(free_part, g, sec)};
}

CircleValue pontryagin_pair(const std::vector<CircleValue>& u, const std::vector<Int>& z,
                            const IMat& pairing) {
    require(int(u.size()) == pairing.rows() && int(z.size()) == pairing.cols(),
            "pontryagin_pair: dimension mismatch");
    CircleValue acc = CircleValue::zero();
    for (int i = 0; i < pairing.rows(); ++i) {
        Int w(0);
        for (int j = 0; j < pairing.cols(); ++j) w += pairing(i, j) * z[j];
        acc = acc + u[i].scaled(w);
    }
    return acc;
}

CircleValue pontryagin_pair(const std::vector<Rat>& u, const std::vector<Int>& z,
                            const IMat& pairing) {
    std::vector<CircleValue> cu;
    cu.reserve(u.size());
    for (const Rat& r : u) cu.push_back(CircleValue::exact(r));
    return pontryagin_pair(cu, z, pairing);
}

}  // namespace adl
