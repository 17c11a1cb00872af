#include "adl/dyncyl.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <json.hpp>

#include "json_util.hpp"

namespace adl {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

// Target for the adaptive bump transforms; gaussians are closed-form.
constexpr double kBumpQuadTol = 1e-12;
constexpr int kQuadMaxDepth = 30;

// (2 pi i omega)^deriv, the transform factor for a distributional
// derivative.
std::complex<double> derivative_factor(double omega, int deriv) {
    const std::complex<double> base(0.0, kTwoPi * omega);
    std::complex<double> out(1.0, 0.0);
    for (int k = 0; k < deriv; ++k) out *= base;
    return out;
}

double derivative_factor_abs(double omega, int deriv) {
    double out = 1.0;
    for (int k = 0; k < deriv; ++k) out *= kTwoPi * std::abs(omega);
    return out;
}

// Adaptive Simpson with Richardson correction for complex integrands. The
// error estimate |S_fine - S_coarse| / 15 is summed over accepted panels.
struct QuadResult {
    std::complex<double> value;
    double abs_error = 0.0;
};

template <class F>
void simpson_refine(const F& f, double a, double m, double b, std::complex<double> fa,
                    std::complex<double> fm, std::complex<double> fb, std::complex<double> whole,
                    double tol, int depth, QuadResult& acc) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const std::complex<double> flm = f(lm);
    const std::complex<double> frm = f(rm);
    const std::complex<double> left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const std::complex<double> right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const std::complex<double> delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        acc.value += left + right + delta / 15.0;
        acc.abs_error += std::abs(delta) / 15.0;
        return;
    }
    simpson_refine(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc);
    simpson_refine(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

template <class F>
QuadResult adaptive_simpson(const F& f, double a, double b, double tol) {
    QuadResult acc;
    if (!(a < b)) return acc;
    const double m = 0.5 * (a + b);
    const std::complex<double> fa = f(a);
    const std::complex<double> fm = f(m);
    const std::complex<double> fb = f(b);
    const std::complex<double> whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_refine(f, a, m, b, fa, fm, fb, whole, tol, kQuadMaxDepth, acc);
    return acc;
}

// Neumaier-compensated accumulator; the mode sums stay exact to the last
// few ulps even when terms alternate in sign.
struct Compensated {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + comp; }
};

int atom_order(const ModeAtom& x, const ModeAtom& y) {
    const auto kx = std::make_tuple(int(x.profile.kind), x.profile.center, x.profile.width,
                                    x.profile.amplitude, x.deriv);
    const auto ky = std::make_tuple(int(y.profile.kind), y.profile.center, y.profile.width,
                                    y.profile.amplitude, y.deriv);
    if (kx < ky) return -1;
    if (ky < kx) return 1;
    return 0;
}

int coeff_order(std::complex<double> x, std::complex<double> y) {
    if (x.real() != y.real()) return x.real() < y.real() ? -1 : 1;
    if (x.imag() != y.imag()) return x.imag() < y.imag() ? -1 : 1;
    return 0;
}

int mode_map_compare(const ModeMap& a, const ModeMap& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        const auto& xs = ia->second;
        const auto& ys = ib->second;
        const size_t n = std::min(xs.size(), ys.size());
        for (size_t i = 0; i < n; ++i) {
            if (int c = atom_order(xs[i], ys[i])) return c;
            if (int c = coeff_order(xs[i].coeff, ys[i].coeff)) return c;
        }
        if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
    }
    if (ia != a.end()) return 1;
    if (ib != b.end()) return -1;
    return 0;
}

void merge_into(ModeMap& target, const ModeMap& source, bool negate) {
    for (const auto& [n, atoms] : source) {
        auto& dst = target[n];
        for (const auto& atom : atoms) {
            dst.push_back({negate ? -atom.coeff : atom.coeff, atom.profile, atom.deriv});
        }
    }
}

// Time transform of the mode map at circle frequency m: the transform of
// mode -m evaluated at omega, following the plane-wave convention
// exp(2 pi i (n theta - omega t)).
SpotValue mode_fourier(const ModeMap& modes, double omega, int m) {
    SpotValue out;
    const auto it = modes.find(-m);
    if (it == modes.end()) return out;
    for (const ModeAtom& atom : it->second) {
        const SpotValue base = profile_fourier(atom.profile, omega, atom.deriv);
        out.value += atom.coeff * base.value;
        out.abs_error += std::abs(atom.coeff) * base.abs_error;
    }
    return out;
}

int top_frequency(const ModeMap& modes) {
    int top = 0;
    for (const auto& [n, atoms] : modes) top = std::max(top, std::abs(n));
    return top;
}

// The curl component of the form, d(a dtheta + b dt) = (d_t a - d_theta b)
// dt^dtheta, as a mode map. This is the data the second commutator route
// pairs against the sine kernel.
ModeMap curl_modes(const TestForm& form) {
    ModeMap out;
    for (const auto& [n, atoms] : form.dtheta) {
        for (const ModeAtom& atom : atoms) out[n].push_back({atom.coeff, atom.profile, atom.deriv + 1});
    }
    for (const auto& [n, atoms] : form.dt) {
        if (n == 0) continue;
        const std::complex<double> spin(0.0, -kTwoPi * n);
        for (const ModeAtom& atom : atoms) {
            out[n].push_back({spin * atom.coeff, atom.profile, atom.deriv});
        }
    }
    return canonical_modes(std::move(out));
}

// Propagated error bound for a product of two transform values.
double product_error(const SpotValue& x, const SpotValue& y) {
    return std::abs(x.value) * y.abs_error + x.abs_error * std::abs(y.value) +
           x.abs_error * y.abs_error;
}

struct ModeSum {
    std::complex<double> value;
    double tail_bound = 0.0;
    double abs_error = 0.0;
};

// Sum over n >= 1 of the sine-kernel pairing
//   [F(-n, n) G(n, -n) + F(-n, -n) G(n, n)
//    - F(n, n) G(-n, -n) - F(n, -n) G(-n, n)] / (4 pi i n)
// where F(omega, m) is the time transform of the first map at circle
// frequency m. Terms beyond the truncation land in tail_bound by modulus.
ModeSum propagator_sum(const ModeMap& ma, const ModeMap& mb, int truncation) {
    ModeSum out;
    Compensated re;
    Compensated im;
    const int top = std::max(top_frequency(ma), top_frequency(mb));
    for (int n = 1; n <= top; ++n) {
        const SpotValue f1 = mode_fourier(ma, -n, n);
        const SpotValue g1 = mode_fourier(mb, n, -n);
        const SpotValue f2 = mode_fourier(ma, -n, -n);
        const SpotValue g2 = mode_fourier(mb, n, n);
        const SpotValue f3 = mode_fourier(ma, n, n);
        const SpotValue g3 = mode_fourier(mb, -n, -n);
        const SpotValue f4 = mode_fourier(ma, n, -n);
        const SpotValue g4 = mode_fourier(mb, -n, n);
        // Grouped so the terms that cancel pairwise under a = b or under an
        // argument swap cancel exactly, making the pairing antisymmetric to
        // the bit and zero on the diagonal.
        const std::complex<double> numer =
            (f1.value * g1.value - f4.value * g4.value) +
            (f2.value * g2.value - f3.value * g3.value);
        const double weight = 1.0 / (4.0 * kPi * n);
        // 1 / (4 pi i n) = -i / (4 pi n)
        const std::complex<double> term = std::complex<double>(0.0, -weight) * numer;
        out.abs_error += weight * (product_error(f1, g1) + product_error(f2, g2) +
                                   product_error(f3, g3) + product_error(f4, g4));
        if (n <= truncation) {
            re.add(term.real());
            im.add(term.imag());
        } else {
            out.tail_bound += std::abs(term);
        }
    }
    out.value = {re.value(), im.value()};
    return out;
}

const std::string kFormCtx = "test form";

TimeProfile profile_from_json(const json& v) {
    require(v.is_object(), "time profile: expected an object");
    const json& kind = jsondetail::field(v, "kind", "time profile");
    require(kind.is_string(), "time profile: kind must be a string");
    auto num = [&](const char* key) {
        const json& f = jsondetail::field(v, key, "time profile");
        require(f.is_number(), std::string("time profile: field '") + key + "' must be a number");
        return f.get<double>();
    };
    const std::string k = kind.get<std::string>();
    if (k == "gaussian") return gaussian_profile(num("center"), num("width"), num("amplitude"));
    if (k == "bump") {
        const json& sup = jsondetail::field(v, "support", "time profile");
        require(sup.is_array() && sup.size() == 2 && sup[0].is_number() && sup[1].is_number(),
                "time profile: support must be a pair of numbers");
        return bump_profile(sup[0].get<double>(), sup[1].get<double>(), num("amplitude"));
    }
    fail("time profile: unknown kind '" + k + "'");
}

json profile_to_json(const TimeProfile& p) {
    if (p.kind == TimeProfile::Kind::gaussian) {
        return json{{"kind", "gaussian"},
                    {"center", p.center},
                    {"width", p.width},
                    {"amplitude", p.amplitude}};
    }
    return json{{"kind", "bump"},
                {"support", json::array({p.center - p.width, p.center + p.width})},
                {"amplitude", p.amplitude}};
}

void parse_component_block(const json& block, TestForm& out) {
    require(block.is_object(), kFormCtx + ": component block must be an object");
    const json& comp = jsondetail::field(block, "component", kFormCtx);
    require(comp.is_string(), kFormCtx + ": component must be a string");
    const std::string name = comp.get<std::string>();
    ModeMap* target = nullptr;
    if (name == "dtheta") target = &out.dtheta;
    if (name == "dt") target = &out.dt;
    require(target != nullptr, kFormCtx + ": component must be \"dtheta\" or \"dt\"");
    const json& modes = jsondetail::field(block, "modes", kFormCtx);
    require(modes.is_array(), kFormCtx + ": modes must be an array");
    for (const json& m : modes) {
        require(m.is_object(), kFormCtx + ": mode must be an object");
        const json& n = jsondetail::field(m, "n", kFormCtx);
        require(n.is_number_integer(), kFormCtx + ": mode frequency must be an integer");
        auto num = [&](const char* key) {
            const json& f = jsondetail::field(m, key, kFormCtx);
            require(f.is_number(), kFormCtx + ": field '" + std::string(key) + "' must be a number");
            return f.get<double>();
        };
        int deriv = 0;
        if (m.contains("deriv")) {
            const json& d = m.at("deriv");
            require(d.is_number_integer() && d.get<long long>() >= 0,
                    kFormCtx + ": deriv must be a non-negative integer");
            deriv = int(d.get<long long>());
        }
        ModeAtom atom{{num("coeff_re"), num("coeff_im")},
                      profile_from_json(jsondetail::field(m, "profile", kFormCtx)),
                      deriv};
        (*target)[n.get<int>()].push_back(atom);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Time profiles.
// ---------------------------------------------------------------------------

TimeProfile gaussian_profile(double center, double width, double amplitude) {
    require(width > 0.0, "time profile: width must be positive");
    return {TimeProfile::Kind::gaussian, center, width, amplitude};
}

TimeProfile bump_profile(double lo, double hi, double amplitude) {
    require(hi > lo, "time profile: support must be an increasing pair");
    return {TimeProfile::Kind::bump, 0.5 * (lo + hi), 0.5 * (hi - lo), amplitude};
}

double profile_value(const TimeProfile& p, double t, int deriv) {
    require(deriv >= 0, "time profile: derivative order must be non-negative");
    if (p.kind == TimeProfile::Kind::gaussian) {
        const double x = (t - p.center) / p.width;
        const double base = p.amplitude * std::exp(-0.5 * x * x);
        if (deriv == 0) return base;
        // d^n/dt^n exp(-x^2/2) = (-1/width)^n He_n(x) exp(-x^2/2) with the
        // probabilists' Hermite polynomials He_{k+1} = x He_k - k He_{k-1}.
        double prev = 1.0;
        double cur = x;
        for (int k = 1; k < deriv; ++k) {
            const double next = x * cur - double(k) * prev;
            prev = cur;
            cur = next;
        }
        double scale = 1.0;
        for (int k = 0; k < deriv; ++k) scale *= -1.0 / p.width;
        return base * cur * scale;
    }
    if (std::abs(t - p.center) >= p.width) return 0.0;
    const double u = kPi * (t - p.center) / p.width;
    if (deriv == 0) return 0.5 * p.amplitude * (1.0 + std::cos(u));
    // Each derivative of cos advances the phase by pi/2 and scales by pi/w.
    double factor = 0.5 * p.amplitude;
    for (int k = 0; k < deriv; ++k) factor *= kPi / p.width;
    return factor * std::cos(u + 0.5 * kPi * double(deriv));
}

std::pair<double, double> profile_window(const TimeProfile& p) {
    const double reach = p.kind == TimeProfile::Kind::bump ? p.width : 14.0 * p.width;
    return {p.center - reach, p.center + reach};
}

SpotValue profile_fourier(const TimeProfile& p, double omega, int deriv) {
    require(deriv >= 0, "time profile: derivative order must be non-negative");
    SpotValue base;
    if (p.kind == TimeProfile::Kind::gaussian) {
        const double mag = p.amplitude * p.width * std::sqrt(kTwoPi) *
                           std::exp(-2.0 * kPi * kPi * p.width * p.width * omega * omega);
        const double phase = -kTwoPi * omega * p.center;
        base.value = mag * std::complex<double>(std::cos(phase), std::sin(phase));
    } else {
        const auto [lo, hi] = profile_window(p);
        auto integrand = [&](double t) {
            const double phase = -kTwoPi * omega * t;
            return profile_value(p, t) * std::complex<double>(std::cos(phase), std::sin(phase));
        };
        const QuadResult q = adaptive_simpson(integrand, lo, hi, kBumpQuadTol);
        base.value = q.value;
        base.abs_error = q.abs_error;
    }
    if (deriv == 0) return base;
    return {base.value * derivative_factor(omega, deriv),
            base.abs_error * derivative_factor_abs(omega, deriv)};
}

// ---------------------------------------------------------------------------
// Test forms.
// ---------------------------------------------------------------------------

ModeMap canonical_modes(ModeMap modes) {
    ModeMap out;
    for (auto& [n, atoms] : modes) {
        std::stable_sort(atoms.begin(), atoms.end(),
                         [](const ModeAtom& x, const ModeAtom& y) { return atom_order(x, y) < 0; });
        std::vector<ModeAtom> merged;
        for (const ModeAtom& atom : atoms) {
            if (!merged.empty() && atom_order(merged.back(), atom) == 0) {
                merged.back().coeff += atom.coeff;
            } else {
                merged.push_back(atom);
            }
        }
        std::erase_if(merged, [](const ModeAtom& a) {
            return a.coeff.real() == 0.0 && a.coeff.imag() == 0.0;
        });
        if (!merged.empty()) out[n] = std::move(merged);
    }
    return out;
}

TestForm canonical_form(TestForm form) {
    return {canonical_modes(std::move(form.dtheta)), canonical_modes(std::move(form.dt))};
}

TestForm form_add(const TestForm& a, const TestForm& b) {
    TestForm out = a;
    merge_into(out.dtheta, b.dtheta, false);
    merge_into(out.dt, b.dt, false);
    return canonical_form(std::move(out));
}

TestForm form_negate(const TestForm& a) {
    TestForm out;
    merge_into(out.dtheta, a.dtheta, true);
    merge_into(out.dt, a.dt, true);
    return canonical_form(std::move(out));
}

bool form_is_zero(const TestForm& a) { return a.dtheta.empty() && a.dt.empty(); }

int form_compare(const TestForm& a, const TestForm& b) {
    if (int c = mode_map_compare(a.dtheta, b.dtheta)) return c;
    return mode_map_compare(a.dt, b.dt);
}

TestForm translate_form(const TestForm& form, double shift) {
    TestForm out = form;
    for (auto& [n, atoms] : out.dtheta) {
        for (ModeAtom& atom : atoms) atom.profile.center += shift;
    }
    for (auto& [n, atoms] : out.dt) {
        for (ModeAtom& atom : atoms) atom.profile.center += shift;
    }
    return out;
}

TestForm exterior_derivative(const ModeMap& scalar) {
    TestForm out;
    for (const auto& [n, atoms] : scalar) {
        for (const ModeAtom& atom : atoms) {
            if (n != 0) {
                const std::complex<double> spin(0.0, kTwoPi * n);
                out.dtheta[n].push_back({spin * atom.coeff, atom.profile, atom.deriv});
            }
            out.dt[n].push_back({atom.coeff, atom.profile, atom.deriv + 1});
        }
    }
    return canonical_form(std::move(out));
}

TestForm two_form_codifferential(const ModeMap& c) {
    TestForm out;
    for (const auto& [n, atoms] : c) {
        for (const ModeAtom& atom : atoms) {
            out.dtheta[n].push_back({atom.coeff, atom.profile, atom.deriv + 1});
            if (n != 0) {
                const std::complex<double> spin(0.0, kTwoPi * n);
                out.dt[n].push_back({spin * atom.coeff, atom.profile, atom.deriv});
            }
        }
    }
    return canonical_form(std::move(out));
}

TestForm parse_test_form(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail("test form: parse error: " + std::string(e.what()));
    }
    TestForm out;
    if (doc.is_array()) {
        for (const json& block : doc) parse_component_block(block, out);
    } else {
        parse_component_block(doc, out);
    }
    return canonical_form(std::move(out));
}

std::string test_form_json(const TestForm& form) {
    json blocks = json::array();
    auto emit = [&](const char* name, const ModeMap& modes) {
        if (modes.empty()) return;
        json list = json::array();
        for (const auto& [n, atoms] : modes) {
            for (const ModeAtom& atom : atoms) {
                json m{{"n", n},
                       {"coeff_re", atom.coeff.real()},
                       {"coeff_im", atom.coeff.imag()},
                       {"profile", profile_to_json(atom.profile)}};
                if (atom.deriv != 0) m["deriv"] = atom.deriv;
                list.push_back(std::move(m));
            }
        }
        blocks.push_back(json{{"component", name}, {"modes", std::move(list)}});
    };
    emit("dtheta", form.dtheta);
    emit("dt", form.dt);
    return blocks.dump();
}

TestForm sample_test_form(Rng& rng, int max_modes, int max_n) {
    require(max_modes >= 1 && max_n >= 1, "test form sampler: mode bounds must be positive");
    TestForm out;
    const long count = rng.int_range(1, max_modes);
    for (long i = 0; i < count; ++i) {
        ModeMap& comp = rng.below(2) == 0 ? out.dtheta : out.dt;
        const int n = int(rng.int_range(0, max_n));
        TimeProfile profile;
        const double amp = (rng.below(2) == 0 ? 1.0 : -1.0) * (0.3 + rng.real01());
        if (rng.below(2) == 0) {
            profile = gaussian_profile(2.0 * rng.real01() - 1.0, 0.25 + 0.5 * rng.real01(), amp);
        } else {
            const double lo = rng.real01() - 1.5;
            profile = bump_profile(lo, lo + 0.5 + rng.real01(), amp);
        }
        const double re = 2.0 * rng.real01() - 1.0;
        if (n == 0) {
            comp[0].push_back({{re, 0.0}, profile, 0});
        } else {
            // Conjugate-symmetric pair, so the sampled form is real-valued.
            const double im = 2.0 * rng.real01() - 1.0;
            comp[n].push_back({{re, im}, profile, 0});
            comp[-n].push_back({{re, -im}, profile, 0});
        }
    }
    return canonical_form(std::move(out));
}

// ---------------------------------------------------------------------------
// Dynamical elements.
// ---------------------------------------------------------------------------

DynElement::DynElement(TestForm form) : form_(canonical_form(std::move(form))) {
    ModeMap delta;
    for (const auto& [n, atoms] : form_.dtheta) {
        if (n == 0) continue;
        const std::complex<double> spin(0.0, -kTwoPi * n);
        for (const ModeAtom& atom : atoms) {
            delta[n].push_back({spin * atom.coeff, atom.profile, atom.deriv});
        }
    }
    for (const auto& [n, atoms] : form_.dt) {
        for (const ModeAtom& atom : atoms) {
            delta[n].push_back({atom.coeff, atom.profile, atom.deriv + 1});
        }
    }
    delta_ = canonical_modes(std::move(delta));
    top_mode_ = top_frequency(delta_);
}

SpotValue delta_fourier(const DynElement& e, double omega, int m) {
    return mode_fourier(e.delta(), omega, m);
}

TestForm duality_dyn(const TestForm& form) {
    TestForm out;
    merge_into(out.dtheta, form.dt, true);
    merge_into(out.dt, form.dtheta, true);
    return canonical_form(std::move(out));
}

DynElement duality_dyn(const DynElement& e) { return DynElement(duality_dyn(e.form())); }

// ---------------------------------------------------------------------------
// Two-point function and commutator.
// ---------------------------------------------------------------------------

TwoPointResult two_point(const DynElement& a, const DynElement& b, int truncation) {
    require(truncation > 0, "two-point: truncation must be positive");
    TwoPointResult out;
    out.truncation = truncation;
    Compensated re;
    Compensated im;
    const int top = std::max(a.top_mode(), b.top_mode());
    for (int n = 1; n <= top; ++n) {
        const SpotValue fa1 = delta_fourier(a, n, n);
        const SpotValue fb1 = delta_fourier(b, -n, -n);
        const SpotValue fa2 = delta_fourier(a, n, -n);
        const SpotValue fb2 = delta_fourier(b, -n, n);
        const std::complex<double> numer = fa1.value * fb1.value + fa2.value * fb2.value;
        const double weight = 1.0 / (4.0 * kPi * n);
        const std::complex<double> term = weight * numer;
        out.quadrature_error += weight * (product_error(fa1, fb1) + product_error(fa2, fb2));
        out.gross_mass += weight * (std::abs(fa1.value) * std::abs(fb1.value) +
                                    std::abs(fa2.value) * std::abs(fb2.value));
        if (n <= truncation) {
            re.add(term.real());
            im.add(term.imag());
        } else {
            out.tail_bound += std::abs(term);
        }
    }
    out.value = {re.value(), im.value()};
    return out;
}

TauResult tau_dyn(const DynElement& a, const DynElement& b, int truncation) {
    require(truncation > 0, "commutator: truncation must be positive");
    const ModeSum route_delta = propagator_sum(a.delta(), b.delta(), truncation);
    const ModeSum route_curl =
        propagator_sum(curl_modes(a.form()), curl_modes(b.form()), truncation);
    TauResult out;
    out.value = route_delta.value.real();
    out.imag_residual = std::abs(route_delta.value.imag());
    out.route_gap = std::abs(route_delta.value - route_curl.value);
    out.tail_bound = route_delta.tail_bound;
    out.quadrature_error = route_delta.abs_error + route_curl.abs_error;
    return out;
}

CircleValue sigma_dyn(const DynElement& a, const DynElement& b, int truncation) {
    return CircleValue::approx(tau_dyn(a, b, truncation).value);
}

// ---------------------------------------------------------------------------
// The quasi-free state.
// ---------------------------------------------------------------------------

WeylCoeff omega_dyn_value(const DynElement& e, int truncation) {
    const TwoPointResult tp = two_point(e, e, truncation);
    return WeylCoeff::approx(std::exp(-kTwoPi * tp.value));
}

StateFunctional<DynElement> omega_dyn(int truncation) {
    return {"dyn",
            [truncation](const DynElement& g) { return omega_dyn_value(g, truncation); }};
}

// ---------------------------------------------------------------------------
// Handle registry.
// ---------------------------------------------------------------------------

DynRegistry::DynRegistry(int truncation) : store_(std::make_shared<Store>()) {
    require(truncation > 0, "dynamical registry: truncation must be positive");
    store_->truncation = truncation;
    store_->elems.emplace_back();
}

int DynRegistry::intern_into(Store& store, DynElement e) {
    for (int i = 0; i < int(store.elems.size()); ++i) {
        if (form_compare(store.elems[size_t(i)].form(), e.form()) == 0) return i;
    }
    store.elems.push_back(std::move(e));
    return int(store.elems.size()) - 1;
}

int DynRegistry::intern(DynElement e) { return intern_into(*store_, std::move(e)); }

const DynElement& DynRegistry::at(int handle) const { return checked(*store_, handle); }

int DynRegistry::size() const { return int(store_->elems.size()); }

DynGroupOps DynRegistry::group_ops() const {
    DynGroupOps ops;
    auto store = store_;
    ops.add = [store](int a, int b) {
        return intern_into(*store, DynElement(form_add(checked(*store, a).form(),
                                                       checked(*store, b).form())));
    };
    ops.negate = [store](int a) {
        return intern_into(*store, DynElement(form_negate(checked(*store, a).form())));
    };
    ops.is_zero = [store](int a) { return checked(*store, a).is_zero(); };
    return ops;
}

DynPairing DynRegistry::pairing() const {
    auto store = store_;
    return [store](int a, int b) {
        return sigma_dyn(checked(*store, a), checked(*store, b), store->truncation);
    };
}

std::function<WeylCoeff(int)> DynRegistry::state() const {
    auto store = store_;
    return [store](int a) { return omega_dyn_value(checked(*store, a), store->truncation); };
}

const DynElement& DynRegistry::checked(const Store& store, int handle) {
    require(handle >= 0 && handle < int(store.elems.size()),
            "dynamical registry: unknown handle");
    return store.elems[size_t(handle)];
}

// ---------------------------------------------------------------------------
// Ground-state certificate.
// ---------------------------------------------------------------------------

GroundStateReport ground_state_check(const DynElement& a, const DynElement& b, int samples,
                                     int truncation) {
    GroundStateReport out;
    out.max_mode = std::max(a.top_mode(), b.top_mode());
    require(samples > 2 * out.max_mode,
            "ground state check: sample count must exceed twice the top mode");
    out.samples = samples;
    std::vector<std::complex<double>> response(static_cast<size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const DynElement shifted(translate_form(a.form(), double(j) / double(samples)));
        response[size_t(j)] = two_point(shifted, b, truncation).value;
    }
    // For F(tau) = sum_n alpha_n exp(-2 pi i n tau) the coefficient at n is
    // recovered by A_n = (1/M) sum_j F(j/M) exp(2 pi i n j / M).
    const int hi = samples / 2;
    const int lo = hi - samples + 1;
    for (int m = lo; m <= hi; ++m) {
        std::complex<double> acc;
        for (int j = 0; j < samples; ++j) {
            const double phase = kTwoPi * double(m) * double(j) / double(samples);
            acc += response[size_t(j)] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        acc /= double(samples);
        out.spectrum.emplace_back(m, acc);
        const double mass = std::abs(acc);
        if (m <= 0) out.off_mass += mass;
        out.peak = std::max(out.peak, mass);
    }
    return out;
}

}  // namespace adl
