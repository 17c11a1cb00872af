#include "adl/weyl.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace adl {

namespace {

constexpr double kTau = 6.28318530717958647692528676655900577;

std::complex<double> to_complex(const GaussRat& g) {
    return {rat_to_double(g.re), rat_to_double(g.im)};
}

// Fold amp * e^{2 pi i theta} into (theta', amp') with theta' in [0, 1/4):
// whole quarter turns move into the Gaussian-rational amplitude as powers
// of i, so conjugation and products never leave the stored range.
void push_folded(std::vector<std::pair<Rat, GaussRat>>& out, const Rat& theta,
                 const GaussRat& amp) {
    if (amp.is_zero()) return;
    const Rat t = rat_mod1(theta);
    const Int q = rat_floor(t * 4);
    out.emplace_back(t - Rat(q) / 4, amp.times_i_pow(q.get_si()));
}

}  // namespace

void WeylCoeff::normalize() {
    if (!exact_) return;
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    size_t w = 0;
    for (size_t r = 0; r < terms_.size(); ++r) {
        if (w > 0 && terms_[w - 1].first == terms_[r].first) {
            terms_[w - 1].second = terms_[w - 1].second + terms_[r].second;
        } else {
            if (w != r) terms_[w] = std::move(terms_[r]);
            ++w;
        }
    }
    terms_.resize(w);
    std::erase_if(terms_, [](const auto& t) { return t.second.is_zero(); });
}

WeylCoeff WeylCoeff::one() { return exact(GaussRat(1)); }

WeylCoeff WeylCoeff::exact(GaussRat amp) {
    WeylCoeff c;
    push_folded(c.terms_, Rat(0), amp);
    return c;
}

WeylCoeff WeylCoeff::approx(std::complex<double> value) {
    WeylCoeff c;
    c.exact_ = false;
    c.value_ = value;
    return c;
}

WeylCoeff WeylCoeff::unit_phase(const CircleValue& phase) {
    if (phase.is_exact()) {
        WeylCoeff c;
        push_folded(c.terms_, phase.rational(), GaussRat(1));
        return c;
    }
    return approx(std::polar(1.0, kTau * phase.value()));
}

bool WeylCoeff::is_zero() const {
    return exact_ ? terms_.empty() : std::abs(value_) < kCoeffDrop;
}

std::complex<double> WeylCoeff::approx_value() const {
    if (!exact_) return value_;
    std::complex<double> total = 0.0;
    for (const auto& [theta, amp] : terms_)
        total += to_complex(amp) * std::polar(1.0, kTau * rat_to_double(theta));
    return total;
}

WeylCoeff WeylCoeff::operator+(const WeylCoeff& o) const {
    if (exact_ && o.exact_) {
        WeylCoeff out;
        out.terms_ = terms_;
        out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
        out.normalize();
        return out;
    }
    return approx(approx_value() + o.approx_value());
}

WeylCoeff WeylCoeff::operator-(const WeylCoeff& o) const { return *this + (-o); }

WeylCoeff WeylCoeff::operator*(const WeylCoeff& o) const {
    if (exact_ && o.exact_) {
        WeylCoeff out;
        for (const auto& [t1, a1] : terms_)
            for (const auto& [t2, a2] : o.terms_) push_folded(out.terms_, t1 + t2, a1 * a2);
        out.normalize();
        return out;
    }
    return approx(approx_value() * o.approx_value());
}

WeylCoeff WeylCoeff::operator-() const {
    if (!exact_) return approx(-value_);
    WeylCoeff out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
}

WeylCoeff WeylCoeff::conj() const {
    if (!exact_) return approx(std::conj(value_));
    WeylCoeff out;
    for (const auto& [t, a] : terms_) push_folded(out.terms_, -t, a.conj());
    out.normalize();
    return out;
}

WeylCoeff WeylCoeff::times_phase(const CircleValue& phase) const {
    if (exact_ && phase.is_exact()) {
        const Rat p = phase.rational();
        WeylCoeff out;
        for (const auto& [t, a] : terms_) push_folded(out.terms_, t + p, a);
        out.normalize();
        return out;
    }
    return approx(approx_value() * std::polar(1.0, kTau * phase.value()));
}

bool WeylCoeff::operator==(const WeylCoeff& o) const {
    if (exact_ != o.exact_) return false;
    if (exact_) return terms_ == o.terms_;
    return value_ == o.value_;
}

const std::vector<std::pair<Rat, GaussRat>>& WeylCoeff::exact_terms() const {
    require(exact_, "coefficient: exact terms requested from a float-mode value");
    return terms_;
}

std::string WeylCoeff::str() const {
    std::ostringstream os;
    if (!exact_) {
        os << value_.real() << (value_.imag() < 0 ? " - " : " + ") << std::abs(value_.imag())
           << "i";
        return os.str();
    }
    if (terms_.empty()) return "0";
    for (size_t i = 0; i < terms_.size(); ++i) {
        const auto& [theta, amp] = terms_[i];
        const Rat im_abs = amp.im < 0 ? Rat(-amp.im) : amp.im;
        if (i) os << " + ";
        os << "(" << rat_to_string(amp.re) << (amp.im < 0 ? " - " : " + ")
           << rat_to_string(im_abs) << "i)";
        if (theta != 0) os << " e(" << rat_to_string(theta) << ")";
    }
    return os.str();
}

double min_hermitian_eigenvalue(const CxMat& m) {
    require(m.rows() == m.cols() && m.rows() > 0, "eigenvalues: nonempty square matrix required");
    const int n = m.rows();
    Eigen::MatrixXcd h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    require(solver.info() == Eigen::Success, "eigenvalues: solver did not converge");
    return solver.eigenvalues().minCoeff();
}

namespace {

bool all_zero_ints(const std::vector<Int>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// Shape guards bound to a model; a mismatched element is the runtime face
// of "element of a different group".
std::function<void(const TopFreeElement&)> free_shape_guard(const SpacetimeModel& st) {
    const size_t nu = size_t(st.surface.free_rank(st.deg_u()));
    const size_t nut = size_t(st.surface.free_rank(st.deg_ut()));
    const size_t nz = size_t(st.surface.free_rank(st.deg_z()));
    const size_t nzt = size_t(st.surface.free_rank(st.deg_zt()));
    return [=](const TopFreeElement& g) {
        require(g.u.size() == nu && g.ut.size() == nut && g.z.size() == nz &&
                    g.zt.size() == nzt,
                "state: element does not match the model's sector shape");
    };
}

std::function<void(const TopTorElement&)> tor_shape_guard(const SpacetimeModel& st) {
    const size_t nt = size_t(st.surface.torsion_rank(st.deg_z()));
    const size_t ntt = size_t(st.surface.torsion_rank(st.deg_zt()));
    return [=](const TopTorElement& g) {
        require(g.t.size() == nt && g.tt.size() == ntt,
                "state: element does not match the model's torsion shape");
    };
}

}  // namespace

StateFunctional<TopFreeElement> omega_free(const SpacetimeModel& st) {
    auto guard = free_shape_guard(st);
    return {"free", [guard](const TopFreeElement& g) {
                guard(g);
                return (all_zero_ints(g.z) && all_zero_ints(g.zt)) ? WeylCoeff::one()
                                                                   : WeylCoeff::zero();
            }};
}

StateFunctional<TopFreeElement> omega_free_faithful(const SpacetimeModel& st) {
    auto guard = free_shape_guard(st);
    return {"free-faithful", [guard](const TopFreeElement& g) {
                guard(g);
                return top_free_is_zero(g) ? WeylCoeff::one() : WeylCoeff::zero();
            }};
}

StateFunctional<TopTorElement> omega_tor(const SpacetimeModel& st) {
    auto guard = tor_shape_guard(st);
    return {"tor", [guard](const TopTorElement& g) {
                guard(g);
                return top_tor_is_zero(g) ? WeylCoeff::one() : WeylCoeff::zero();
            }};
}

StateFunctional<ObservableElement> omega_total(const AssembledObservables& algebra,
                                               std::function<WeylCoeff(int)> dyn_state) {
    auto free_state = omega_free(algebra.model());
    auto tor_state = omega_tor(algebra.model());
    return {"total",
            [free_state = std::move(free_state), tor_state = std::move(tor_state),
             dyn_state = std::move(dyn_state)](const ObservableElement& g) {
                WeylCoeff value =
                    free_state.on_generator(g.free_part) * tor_state.on_generator(g.tor_part);
                if (g.dyn) {
                    require(bool(dyn_state), "total state: missing dynamical evaluator");
                    value = value * dyn_state(*g.dyn);
                }
                return value;
            }};
}

SectorSplitView<FreeSectorGroup, TorSectorGroup, ObservableGroup> topological_split(
    const AssembledObservables& algebra) {
    SectorSplitView<FreeSectorGroup, TorSectorGroup, ObservableGroup> view{
        FreeSectorGroup{algebra.model()}, TorSectorGroup{algebra.model()},
        ObservableGroup{algebra, std::nullopt}, nullptr, nullptr};
    view.combine = [](const TopFreeElement& f, const TopTorElement& t) {
        return ObservableElement{std::nullopt, f, t};
    };
    view.split = [](const ObservableElement& e) {
        require(!e.dyn, "factorization: element carries a dynamical handle");
        return std::make_pair(e.free_part, e.tor_part);
    };
    return view;
}

std::string FactorizationReport::summary() const {
    std::ostringstream os;
    os << "samples " << samples << ": commutation failures " << commutation_failures
       << ", tensor round-trip failures " << tensor_roundtrip_failures
       << ", algebra round-trip failures " << algebra_roundtrip_failures
       << ", norm bound violations " << norm_violations;
    return os.str();
}

WeylCoeff sample_coeff(Rng& rng, long max_den) {
    GaussRat amp(rng.rational(max_den, 1), rng.rational(max_den, 1));
    if (amp.is_zero()) amp = GaussRat(1);
    return WeylCoeff::exact(std::move(amp));
}

TopFreeElement sample_top_free(const SpacetimeModel& st, Rng& rng, long max_den,
                               long max_flux) {
    auto holonomies = [&](int degree) {
        std::vector<CircleValue> v;
        const int rank = st.surface.free_rank(degree);
        v.reserve(size_t(rank));
        for (int i = 0; i < rank; ++i) v.push_back(CircleValue::exact(rng.rational01(max_den)));
        return v;
    };
    auto fluxes = [&](int degree) {
        std::vector<Int> v;
        const int rank = st.surface.free_rank(degree);
        v.reserve(size_t(rank));
        for (int i = 0; i < rank; ++i) v.push_back(Int(rng.int_range(-max_flux, max_flux)));
        return v;
    };
    auto u = holonomies(st.deg_u());
    auto ut = holonomies(st.deg_ut());
    auto z = fluxes(st.deg_z());
    auto zt = fluxes(st.deg_zt());
    return top_free_element(std::move(u), std::move(ut), std::move(z), std::move(zt), st);
}

TopTorElement sample_top_tor(const SpacetimeModel& st, Rng& rng) {
    auto classes = [&](int degree) {
        std::vector<Int> v;
        const auto& factors = st.surface.group(degree).invariant_factors();
        v.reserve(factors.size());
        for (const auto& f : factors) v.push_back(Int(rng.int_range(0, f.get_si() - 1)));
        return v;
    };
    auto t = classes(st.deg_z());
    auto tt = classes(st.deg_zt());
    return top_tor_element(std::move(t), std::move(tt), st);
}

}  // namespace adl
