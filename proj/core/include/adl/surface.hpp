#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adl/fgab.hpp"
#include "adl/mat.hpp"

namespace adl {

// Cohomology model of a compact oriented manifold: one group per degree,
// the cup pairings into the top degree on free generators, and the torsion
// linking form. Generators are fixed per model so every downstream basis and
// pairing is reproducible; orientation enters only through orientation_sign,
// which multiplies all fundamental-class evaluations.
struct SurfaceModel {
    std::string name;
    int dim = 0;
    int orientation_sign = 1;
    // Indexed by degree 0..dim.
    std::vector<FgAbGroup> cohomology;
    // (p, q) with p + q = dim; entry [i][j] = (e_i cup e_j)[Sigma] on free
    // generators, for the reference orientation.
    std::map<std::pair<int, int>, IMat> cup;
    // p -> pairing of the torsion of H^p with the torsion of H^{dim+1-p},
    // entries rational mod 1 in [0, 1).
    std::map<int, QMat> link;

    const FgAbGroup& group(int degree) const;
    int free_rank(int degree) const;
    int torsion_rank(int degree) const;

    // Stored tensor, or the correctly shaped empty matrix when either side
    // has no free generators. Requires p + q = dim.
    IMat cup_tensor(int p, int q) const;
    // Stored linking block, or the correctly shaped empty matrix when either
    // degree is torsion-free. Requires 1 <= p <= dim.
    QMat torsion_link(int p) const;
};

// Checks every structural invariant and throws Error with a precise
// diagnostic on the first violation: shape mismatches, graded commutativity,
// degenerate Poincare duality, ill-defined or degenerate linking form,
// linking symmetry, torsion domain compatibility.
void validate_surface(const SurfaceModel& model);

// Catalog entry by name; see builtin_surface_names() for the spelling.
SurfaceModel builtin_surface(const std::string& name);
std::vector<std::string> builtin_surface_names();

// Fundamental-class evaluation of a top-degree class given on the free
// generators of H^dim, with orientation_sign applied.
Int evaluate_top(const std::vector<Int>& class_coords, const SurfaceModel& model);

// JSON round trip. load_surface validates; the returned model of
// surface_to_json reloads to an equal model.
SurfaceModel load_surface(const std::string& json_text);
std::string surface_to_json(const SurfaceModel& model);

bool surface_equal(const SurfaceModel& a, const SurfaceModel& b);

// Ultrastatic spacetime over a surface: dimension m = dim + 1 and the form
// degree k of the theory, 1 <= k <= m-1.
struct SpacetimeModel {
    SurfaceModel surface;
    int m = 0;
    int k = 0;

    SpacetimeModel(SurfaceModel surface_, int m_, int k_);

    // Degrees carried by the three sectors.
    int deg_u() const { return k - 1; }
    int deg_z() const { return k; }
    int deg_ut() const { return m - k - 1; }
    int deg_zt() const { return m - k; }
};

}  // namespace adl
