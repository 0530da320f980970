#include "entroq/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>
#include <tuple>
#include <vector>

#include "entroq/errors.hpp"
#include "entroq/specfun.hpp"

namespace entroq {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// 15-point Gauss-Kronrod rule (QUADPACK QK15 nodes and weights).

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Gk15 {
    double value;
    double error;
};

Gk15 gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(fc) * kWgk[7];
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }
    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    if (!std::isfinite(value)) {
        throw IntegrandError("radial quadrature: non-finite integrand value");
    }
    return {value, err};
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

struct AdaptiveOut {
    IntegrationResult res;
    bool exhausted = false;
};

// Globally adaptive bisection on [a, b]: always split the segment with the
// largest error until sum(err) <= max(abs_tol, rel_tol * |sum(val)|).
AdaptiveOut adaptive_gk(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, double abs_tol, long max_evals,
                        long& evals_used) {
    AdaptiveOut out;
    auto eval_segment = [&](double lo, double hi) -> Segment {
        evals_used += 15;
        const Gk15 g = gk15(f, lo, hi);
        return {lo, hi, g.value, g.error};
    };

    std::priority_queue<Segment> heap;
    Segment whole = eval_segment(a, b);
    double total_v = whole.value;
    double total_e = whole.error;
    heap.push(whole);
    long local_evals = 15;

    const double eps = std::numeric_limits<double>::epsilon();
    while (total_e > std::max(abs_tol, rel_tol * std::abs(total_v))) {
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b ||
            (worst.b - worst.a) <= eps * (std::abs(worst.a) + std::abs(worst.b))) {
            break;  // cannot refine further at this precision
        }
        if (evals_used + 30 > max_evals) {
            out.res = {total_v, total_e, local_evals};
            out.exhausted = true;
            return out;
        }
        heap.pop();
        const Segment left = eval_segment(worst.a, mid);
        const Segment right = eval_segment(mid, worst.b);
        local_evals += 30;
        total_v += left.value + right.value - worst.value;
        total_e += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    out.res = {total_v, total_e, local_evals};
    return out;
}

}  // namespace

IntegrationResult radial_integral(const RadialIntegrand& f, double rel_tol,
                                  long max_evals) {
    if (!(rel_tol > 0.0) || rel_tol > 1e-2) {
        throw std::invalid_argument("radial_integral: rel_tol must lie in (0, 1e-2]");
    }
    if (!(f.q > 0.0)) {
        throw std::domain_error("radial_integral: polar exponent q must be positive");
    }
    const double qm1 = f.q - 1.0;

    // g(r) r^{q-1}, guarded against 0*inf when g underflows before the
    // polar weight overflows (or vice versa).
    auto weighted = [&](double r) -> double {
        const double gv = f.evaluator(r);
        if (gv == 0.0) return 0.0;
        const double w = std::pow(r, qm1);
        const double prod = gv * w;
        if (std::isfinite(prod)) return prod;
        if (r > 0.0 && std::isfinite(gv)) {
            const double lg = std::log(std::abs(gv)) + qm1 * std::log(r);
            const double mag = std::exp(lg);
            return gv < 0.0 ? -mag : mag;
        }
        return prod;  // let the caller's non-finite check fire
    };

    long evals = 0;
    IntegrationResult acc;

    auto bail = [&](const char* where) -> void {
        std::ostringstream os;
        os << "radial_integral: evaluation budget (" << max_evals
           << ") exhausted in " << where;
        acc.evaluations = evals;
        throw BudgetError(os.str(), acc);
    };

    // Head: r in [0, 1] directly. Gauss-Kronrod nodes are interior, so an
    // integrable r^{q-1} singularity at 0 is never touched.
    {
        AdaptiveOut head = adaptive_gk(weighted, 0.0, 1.0, rel_tol, 0.0, max_evals, evals);
        acc.value += head.res.value;
        acc.abs_error_estimate += head.res.abs_error_estimate;
        if (head.exhausted) bail("head quadrature");
    }

    // Tail: r = e^t - 1 turns polynomial decay in r into exponential decay
    // in t. Windows grow geometrically; stop once three consecutive windows
    // contribute nothing at the requested tolerance.
    auto tail_integrand = [&](double t) -> double {
        const double et = std::exp(t);
        const double hv = weighted(et - 1.0);
        if (hv == 0.0) return 0.0;
        return hv * et;
    };

    double t0 = std::log(2.0);
    double width = 2.0;
    int consecutive_small = 0;
    const double t_max = 700.0;  // e^700 ~ 1e304
    while (t0 < t_max && consecutive_small < 3) {
        const double t1 = std::min(t0 + width, t_max);
        const double floor_tol = 0.1 * rel_tol * std::abs(acc.value);
        AdaptiveOut win =
            adaptive_gk(tail_integrand, t0, t1, rel_tol, floor_tol, max_evals, evals);
        acc.value += win.res.value;
        acc.abs_error_estimate += win.res.abs_error_estimate;
        if (win.exhausted) bail("tail quadrature");
        const double scale = std::max(std::abs(acc.value), 1e-300);
        if (std::abs(win.res.value) <= 0.1 * rel_tol * scale) {
            ++consecutive_small;
        } else {
            consecutive_small = 0;
        }
        t0 = t1;
        width *= 2.0;
    }
    acc.evaluations = evals;
    return acc;
}

// ---------------------------------------------------------------------------
// Quasi-Monte Carlo over R^N.

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::vector<int> first_primes(int n) {
    std::vector<int> primes;
    primes.reserve(n);
    for (int c = 2; static_cast<int>(primes.size()) < n; ++c) {
        bool ok = true;
        for (int p : primes) {
            if (p * p > c) break;
            if (c % p == 0) {
                ok = false;
                break;
            }
        }
        if (ok) primes.push_back(c);
    }
    return primes;
}

double radical_inverse(int base, long index) {
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (index > 0) {
        r += f * static_cast<double>(index % base);
        index /= base;
        f *= inv;
    }
    return r;
}

// u in (0,1) -> x in R with density ~ (1 + |x|)^{-(1 + 1/kappa)}; heavier
// tails for larger dilation weights so that integrands decaying in the
// quasi-norm stay square-integrable against the weight.
inline void heavy_tail_map(double u, double kappa, double& x, double& jac) {
    double v = 2.0 * u - 1.0;
    double av = std::abs(v);
    if (av > 1.0 - 1e-12) av = 1.0 - 1e-12;
    const double s = 1.0 - av;
    const double t = std::pow(s, -kappa);
    x = std::copysign(t - 1.0, v);
    jac = 2.0 * kappa * t / s;
}

}  // namespace

IntegrationResult qmc_integral(const DilationStructure& s,
                               const std::function<double(std::span<const double>)>& f,
                               long samples, std::uint64_t seed, int replicates) {
    if (samples < 1024) {
        throw std::invalid_argument("qmc_integral: samples must be at least 2^10");
    }
    if (replicates < 2) {
        throw std::invalid_argument("qmc_integral: need at least 2 replicates");
    }
    const int n = s.dim();
    const long per_replicate = samples / replicates;
    const std::vector<int> bases = first_primes(n);

    std::vector<double> kappa(n);
    for (int i = 0; i < n; ++i) kappa[i] = 1.0 + s.weight(i);

    // Halton points are shared across replicates; each replicate applies its
    // own Cranley-Patterson rotation.
    std::vector<double> base_points(static_cast<size_t>(per_replicate) * n);
    for (long k = 0; k < per_replicate; ++k) {
        for (int i = 0; i < n; ++i) {
            base_points[static_cast<size_t>(k) * n + i] =
                radical_inverse(bases[i], k + 1);
        }
    }

    std::vector<double> means(replicates);
    long bad_nodes = 0;
    std::vector<double> x(n);
    for (int rep = 0; rep < replicates; ++rep) {
        std::uint64_t state = seed + 0x632be59bd9b4e019ULL * static_cast<std::uint64_t>(rep + 1);
        std::vector<double> shift(n);
        for (int i = 0; i < n; ++i) shift[i] = uniform01(splitmix64(state));

        double sum = 0.0;
        for (long k = 0; k < per_replicate; ++k) {
            double jac = 1.0;
            for (int i = 0; i < n; ++i) {
                double u = base_points[static_cast<size_t>(k) * n + i] + shift[i];
                if (u >= 1.0) u -= 1.0;
                double xi, ji;
                heavy_tail_map(u, kappa[i], xi, ji);
                x[i] = xi;
                jac *= ji;
            }
            const double fx = f(std::span<const double>(x));
            if (!std::isfinite(fx)) {
                ++bad_nodes;
                continue;
            }
            sum += fx * jac;
        }
        means[rep] = sum / static_cast<double>(per_replicate);
    }

    const long total = per_replicate * replicates;
    if (bad_nodes * 10000 > total) {
        std::ostringstream os;
        os << "qmc_integral: integrand non-finite at " << bad_nodes << " of "
           << total << " nodes";
        throw IntegrandError(os.str());
    }

    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= replicates;
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= static_cast<double>(replicates - 1);
    const double std_err = std::sqrt(var / replicates);

    return {mean, std_err, total};
}

// ---------------------------------------------------------------------------
// Sphere measure |S|.

std::string to_string(SphereMethod m) {
    switch (m) {
        case SphereMethod::Analytic: return "analytic";
        case SphereMethod::BallVolumeMc: return "ball_volume_mc";
        case SphereMethod::GaussWeightMc: return "gauss_weight_mc";
    }
    return "";
}

namespace {

bool is_unit_euclidean(const QuasiNorm& qn) {
    if (qn.variant() != NormVariant::WeightedP) return false;
    for (double w : qn.structure().weights()) {
        if (w != 1.0) return false;
    }
    // In dimension one every weighted-p norm is |x|.
    return qn.p() == 2.0 || qn.structure().dim() == 1;
}

bool is_heisenberg_koranyi(const QuasiNorm& qn) {
    return qn.variant() == NormVariant::Koranyi && qn.first_layer().size() == 2 &&
           qn.second_layer().size() == 1;
}

double analytic_sphere_value(const QuasiNorm& qn) {
    const auto& s = qn.structure();
    if (is_unit_euclidean(qn)) {
        const double n = static_cast<double>(s.dim());
        return std::exp(std::log(2.0) + 0.5 * n * std::log(kPi) - log_gamma(0.5 * n));
    }
    if (qn.variant() == NormVariant::Max) {
        // The unit ball is always the box |x_i| <= 1.
        return s.q() * std::pow(2.0, s.dim());
    }
    if (is_heisenberg_koranyi(qn)) {
        return 2.0 * kPi * kPi;
    }
    throw ConfigError("sphere_measure: no analytic value for norm '" + qn.describe() +
                      "' on " + s.describe());
}

}  // namespace

bool has_analytic_sphere(const QuasiNorm& qn) {
    return is_unit_euclidean(qn) || qn.variant() == NormVariant::Max ||
           is_heisenberg_koranyi(qn);
}

SphereMeasure sphere_measure(const QuasiNorm& qn, SphereMethod method,
                             const QmcOptions& opts) {
    const auto& s = qn.structure();
    switch (method) {
        case SphereMethod::Analytic:
            return {analytic_sphere_value(qn), SphereMethod::Analytic, 0.0};
        case SphereMethod::BallVolumeMc: {
            // |S| = Q * vol{|x| < 1} from the polar decomposition.
            auto indicator = [&qn](std::span<const double> x) {
                return qn(x) < 1.0 ? 1.0 : 0.0;
            };
            const IntegrationResult vol =
                qmc_integral(s, indicator, opts.samples, opts.seed, opts.replicates);
            return {s.q() * vol.value, SphereMethod::BallVolumeMc,
                    s.q() * vol.abs_error_estimate};
        }
        case SphereMethod::GaussWeightMc: {
            // alpha = 2 in  |S| = alpha * (int e^{-|x|^alpha} dx) / Gamma(Q/alpha).
            auto gauss = [&qn](std::span<const double> x) {
                const double r = qn(x);
                return std::exp(-r * r);
            };
            const IntegrationResult integral =
                qmc_integral(s, gauss, opts.samples, opts.seed, opts.replicates);
            const double gamma_factor = std::exp(log_gamma(0.5 * s.q()));
            return {2.0 * integral.value / gamma_factor, SphereMethod::GaussWeightMc,
                    2.0 * integral.abs_error_estimate / gamma_factor};
        }
    }
    throw ConfigError("sphere_measure: unknown method");
}

SphereMeasure resolve_sphere(const QuasiNorm& qn, const QmcOptions& opts) {
    if (has_analytic_sphere(qn)) {
        return sphere_measure(qn, SphereMethod::Analytic, opts);
    }
    // MC-backed sphere measures are memoized: functional evaluation asks for
    // them repeatedly and a 2^18-sample QMC run is not free.
    using Key = std::tuple<std::string, std::string, long, int, std::uint64_t>;
    static std::map<Key, SphereMeasure> cache;
    static std::mutex mutex;
    Key key{qn.structure().describe(), qn.describe(), opts.samples, opts.replicates,
            opts.seed};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    SphereMeasure m = sphere_measure(qn, SphereMethod::GaussWeightMc, opts);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(std::move(key), m);
    return m;
}

}  // namespace entroq
