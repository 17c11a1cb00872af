#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adl/mod1.hpp"
#include "adl/snf.hpp"

namespace adl {

// Element of a finitely generated abelian group in canonical coordinates:
// one coordinate per invariant factor (reduced into [0, d_i)) followed by the
// free coordinates.
struct GroupElement {
    std::vector<Int> torsion;
    std::vector<Int> free_part;

    bool operator==(const GroupElement& o) const = default;
};

// Finitely generated abelian group, canonically ⊕ Z/d_i ⊕ Z^f with a
// divisibility chain d_1 | d_2 | ... (trivial factors dropped). Groups built
// from a presentation keep the presentation and the Smith basis change.
class FgAbGroup {
  public:
    FgAbGroup() = default;

    // factors may contain 1s (dropped) but must form a divisibility chain.
    static FgAbGroup from_invariant_factors(std::vector<Int> factors, int free_rank);

    // relations: one row per relation over the generators (columns).
    static FgAbGroup from_presentation(const IMat& relations);

    const std::vector<Int>& invariant_factors() const { return factors_; }
    int torsion_rank() const { return int(factors_.size()); }
    int free_rank() const { return free_rank_; }
    bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }
    // Number of elements for finite groups; unset when free rank > 0.
    std::optional<Int> order() const;

    bool same_shape(const FgAbGroup& o) const {
        return factors_ == o.factors_ && free_rank_ == o.free_rank_;
    }

    GroupElement zero() const;
    GroupElement element(std::vector<Int> torsion, std::vector<Int> free_part) const;
    GroupElement canonicalize(GroupElement e) const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement negate(const GroupElement& a) const;
    GroupElement scale(const Int& n, const GroupElement& a) const;
    bool is_zero(const GroupElement& a) const;
    // Total order on canonical coordinates; used for deterministic containers.
    int compare(const GroupElement& a, const GroupElement& b) const;

    // Present only for groups built from a presentation.
    struct PresentationData {
        IMat relations;
        SmithDecomposition snf;
        // Indices into the SNF generator basis: which positions carry the
        // torsion coordinates (d_i >= 2) and which are free.
        std::vector<int> torsion_positions;
        std::vector<int> free_positions;
    };
    const std::optional<PresentationData>& presentation() const { return pres_; }

    // Map a vector in the original generator basis to canonical coordinates.
    GroupElement project_from_presentation(const std::vector<Int>& generator_coords) const;

    std::string describe() const;

  private:
    std::vector<Int> factors_;  // all >= 2, divisibility chain
    int free_rank_ = 0;
    std::optional<PresentationData> pres_;
};

// Homomorphism between groups in canonical coordinates: target = matrix *
// source, columns indexed by (source torsion .. source free), rows by (target
// torsion .. target free). Well-definedness on torsion is checked on
// construction.
class GroupHom {
  public:
    GroupHom(FgAbGroup source, FgAbGroup target, IMat matrix);

    const FgAbGroup& source() const { return source_; }
    const FgAbGroup& target() const { return target_; }
    const IMat& matrix() const { return matrix_; }

    GroupElement apply(const GroupElement& e) const;
    GroupHom compose_after(const GroupHom& inner) const;  // this ∘ inner

  private:
    FgAbGroup source_, target_;
    IMat matrix_;
};

struct FreeTorsionSplit {
    FgAbGroup free_part;
    FgAbGroup torsion_part;
    GroupHom section;  // free part -> group, coordinate inclusion
};

FreeTorsionSplit free_torsion_split(const FgAbGroup& g);

// Character pairing (uᵀ · pairing · z) mod 1 of a torus vector u against an
// integer vector z. Exact whenever every u coordinate is exact.
CircleValue pontryagin_pair(const std::vector<CircleValue>& u, const std::vector<Int>& z,
                            const IMat& pairing);

// Exact-rational convenience overload.
CircleValue pontryagin_pair(const std::vector<Rat>& u, const std::vector<Int>& z,
                            const IMat& pairing);

}  // namespace adl
