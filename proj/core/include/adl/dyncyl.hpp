#pragma once

// Dynamical sector of the flat Lorentz cylinder. Test one-forms live in mode
// space: finitely many circle frequencies, each carrying a finite sum of
// time-profile atoms (a coefficient times a time derivative of a gaussian or
// a cosine-squared bump). On that data the module evaluates the
// positive-frequency two-point function as a compensated mode sum over
// closed-form or quadrature Fourier transforms, the commutator function
// through two independent causal-propagator routes, the induced quasi-free
// state, the duality map that swaps the components, and a translated-sample
// spectrum certificate showing only positive frequencies respond. A handle
// registry wires all of it into the assembled observable group as its
// dynamical block.

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "adl/mod1.hpp"
#include "adl/rng.hpp"
#include "adl/sectors.hpp"
#include "adl/weyl.hpp"

namespace adl {

// ---------------------------------------------------------------------------
// Time profiles.
// ---------------------------------------------------------------------------

// Smooth time dependence of one mode atom. A gaussian is
// amplitude * exp(-(t - center)^2 / (2 width^2)); a bump is the
// cosine-squared taper amplitude * cos^2(pi (t - center) / (2 width))
// supported on [center - width, center + width] and zero outside.
struct TimeProfile {
    enum class Kind { gaussian, bump };
    Kind kind = Kind::gaussian;
    double center = 0.0;
    double width = 1.0;
    double amplitude = 1.0;
};

TimeProfile gaussian_profile(double center, double width, double amplitude);
// The bump is given by its support interval [lo, hi].
TimeProfile bump_profile(double lo, double hi, double amplitude);

// Pointwise value of the deriv-th time derivative.
double profile_value(const TimeProfile& p, double t, int deriv = 0);

// Window outside which the profile is negligible (the exact support for
// bumps, fourteen widths for gaussians).
std::pair<double, double> profile_window(const TimeProfile& p);

// A transform value together with its accumulated quadrature error bound.
// Gaussian transforms are closed-form and carry error zero; bump transforms
// come from adaptive quadrature targeting 1e-12 absolute.
struct SpotValue {
    std::complex<double> value;
    double abs_error = 0.0;
};

// Integral of exp(-2 pi i omega t) against the deriv-th distributional
// derivative of the profile, i.e. (2 pi i omega)^deriv times the plain
// transform.
SpotValue profile_fourier(const TimeProfile& p, double omega, int deriv = 0);

// ---------------------------------------------------------------------------
// Test forms in mode space.
// ---------------------------------------------------------------------------

// One atom of a mode function: coeff times the deriv-th time derivative of
// the profile.
struct ModeAtom {
    std::complex<double> coeff;
    TimeProfile profile;
    int deriv = 0;
};

// Finite family of mode functions indexed by the integer circle frequency.
using ModeMap = std::map<int, std::vector<ModeAtom>>;

// A test one-form a(t, theta) dtheta + b(t, theta) dt with both components
// resolved into circle modes.
struct TestForm {
    ModeMap dtheta;
    ModeMap dt;
};

// Canonical form: atoms sorted, equal atoms merged, exact-zero coefficients
// and empty modes dropped. All comparisons below assume canonical inputs.
ModeMap canonical_modes(ModeMap modes);
TestForm canonical_form(TestForm form);

TestForm form_add(const TestForm& a, const TestForm& b);
TestForm form_negate(const TestForm& a);
bool form_is_zero(const TestForm& a);
int form_compare(const TestForm& a, const TestForm& b);

// Time translation t -> t - shift, exact on the profile parameters.
TestForm translate_form(const TestForm& form, double shift);

// d of a scalar given by circle modes: the dtheta component spins up the
// frequency, the dt component raises the derivative order.
TestForm exterior_derivative(const ModeMap& scalar);

// Codifferential of a top form c dt^dtheta given by the modes of c.
TestForm two_form_codifferential(const ModeMap& c);

// JSON round-trip. The document is either one component block
// {"component": "dtheta"|"dt", "modes": [{"n", "coeff_re", "coeff_im",
// "profile"}, ...]} or an array of such blocks; profiles are
// {"kind": "gaussian", "center", "width", "amplitude"} or
// {"kind": "bump", "support": [lo, hi], "amplitude"}. A mode may carry an
// optional non-negative "deriv"; serialization emits it only when nonzero.
TestForm parse_test_form(const std::string& json_text);
std::string test_form_json(const TestForm& form);

// Seeded conjugate-symmetric (real-valued) test form for property tests.
TestForm sample_test_form(Rng& rng, int max_modes = 2, int max_n = 3);

// ---------------------------------------------------------------------------
// Dynamical elements: a form with its cached codifferential.
// ---------------------------------------------------------------------------

// A test form together with the mode data of its codifferential
// -d_theta(a) + d_t(b), which is what every pairing below consumes. The
// default-constructed element is the zero of the group.
class DynElement {
  public:
    DynElement() = default;
    explicit DynElement(TestForm form);

    const TestForm& form() const { return form_; }
    const ModeMap& delta() const { return delta_; }
    // Largest positive frequency carrying codifferential data.
    int top_mode() const { return top_mode_; }
    bool is_zero() const { return form_is_zero(form_); }

  private:
    TestForm form_;
    ModeMap delta_;
    int top_mode_ = 0;
};

// Transform of the codifferential at integer circle frequency m and real
// time frequency omega: the time transform of mode -m evaluated at omega.
SpotValue delta_fourier(const DynElement& e, double omega, int m);

// Duality on the cylinder with the star convention *(dt) = dtheta,
// *(dtheta) = dt, *1 = dt^dtheta: both components swap and change sign.
// Applying it twice is the identity on one-forms.
TestForm duality_dyn(const TestForm& form);
DynElement duality_dyn(const DynElement& e);

// ---------------------------------------------------------------------------
// Two-point function and commutator.
// ---------------------------------------------------------------------------

// Mode sum truncated at the given frequency. tail_bound is the exact sum of
// the moduli of the dropped terms (the inputs hold finitely many modes);
// quadrature_error accumulates the transform error bounds, zero for
// gaussian-only forms; gross_mass is the sum of the term moduli, the scale
// against which a cancellation to zero is judged.
struct TwoPointResult {
    std::complex<double> value;
    int truncation = 0;
    double tail_bound = 0.0;
    double quadrature_error = 0.0;
    double gross_mass = 0.0;
};

// Positive-frequency two-point function of the dynamical ground state,
// summed ascending with compensated accumulation.
TwoPointResult two_point(const DynElement& a, const DynElement& b, int truncation = 64);

// Commutator function from the causal propagator, evaluated through two
// independent routes: the codifferential modes against the sine kernel, and
// the curl modes (the exterior-derivative component) against the same
// kernel. value carries the first route; route_gap the distance between the
// two; imag_residual the imaginary leftover, zero on real forms.
struct TauResult {
    double value = 0.0;
    double imag_residual = 0.0;
    double route_gap = 0.0;
    double tail_bound = 0.0;
    double quadrature_error = 0.0;
};

TauResult tau_dyn(const DynElement& a, const DynElement& b, int truncation = 64);

// The commutator reduced mod 1: the phase the Weyl relations consume.
CircleValue sigma_dyn(const DynElement& a, const DynElement& b, int truncation = 64);

// ---------------------------------------------------------------------------
// The quasi-free state and the group descriptor.
// ---------------------------------------------------------------------------

// State value on one generator: exp(-2 pi omega_2(rho (x) rho)).
WeylCoeff omega_dyn_value(const DynElement& e, int truncation = 64);

// The dynamical ground state as a functional on formal Weyl sums.
StateFunctional<DynElement> omega_dyn(int truncation = 64);

// Group descriptor over dynamical elements, pairing through sigma_dyn, so
// the generic Weyl layer (sums, products, states, Gram certificates) works
// on the cylinder directly.
struct CylinderGroup {
    int truncation = 64;

    using Element = DynElement;

    Element zero() const { return DynElement(); }
    Element canonical(Element e) const { return DynElement(e.form()); }
    Element add(const Element& a, const Element& b) const {
        return DynElement(form_add(a.form(), b.form()));
    }
    Element negate(const Element& a) const { return DynElement(form_negate(a.form())); }
    bool is_zero(const Element& a) const { return a.is_zero(); }
    int compare(const Element& a, const Element& b) const {
        return form_compare(a.form(), b.form());
    }
    CircleValue pairing(const Element& a, const Element& b) const {
        return sigma_dyn(a, b, truncation);
    }
};

// ---------------------------------------------------------------------------
// Handle registry: the dynamical block of the assembled observable group.
// ---------------------------------------------------------------------------

// Interns dynamical elements behind the integer handles the observable
// group carries, and exposes the group law, the pairing, and the state over
// those handles. Handle 0 is the zero element. The closures share ownership
// of the store, so they stay valid after the registry object goes out of
// scope; interning is not safe from concurrent threads.
class DynRegistry {
  public:
    explicit DynRegistry(int truncation = 64);

    int intern(DynElement e);
    int intern(TestForm form) { return intern(DynElement(std::move(form))); }
    const DynElement& at(int handle) const;
    int size() const;

    DynGroupOps group_ops() const;
    DynPairing pairing() const;
    std::function<WeylCoeff(int)> state() const;

  private:
    struct Store {
        int truncation = 64;
        std::vector<DynElement> elems;
    };
    static int intern_into(Store& store, DynElement e);
    static const DynElement& checked(const Store& store, int handle);

    std::shared_ptr<Store> store_;
};

// ---------------------------------------------------------------------------
// Ground-state certificate.
// ---------------------------------------------------------------------------

// Discrete Fourier analysis of the two-point function against time
// translations of the first argument. For the ground state the response is
// a sum of exp(-2 pi i n tau) with n > 0 only, so every coefficient at a
// frequency <= 0 is leakage.
struct GroundStateReport {
    int samples = 0;
    int max_mode = 0;
    // (frequency, coefficient), frequencies ascending over the aliasing-free
    // range of the sample count.
    std::vector<std::pair<int, std::complex<double>>> spectrum;
    double off_mass = 0.0;  // total mass at frequencies <= 0
    double peak = 0.0;      // largest coefficient magnitude

    // off_mass relative to the peak; zero for an all-silent spectrum.
    double leakage() const { return peak > 0.0 ? off_mass / peak : 0.0; }
};

// samples must exceed twice the top mode of the pair so no frequency
// aliases into the reported range.
GroundStateReport ground_state_check(const DynElement& a, const DynElement& b, int samples,
                                     int truncation = 64);

}  // namespace adl
