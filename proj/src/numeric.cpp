#include "coulombgap/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <queue>
#include <thread>

#include "coulombgap/errors.hpp"

namespace coulombgap {

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double bisect_width, double polish_tol,
                 const std::function<double(double)>& df) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw RootNotFound("find_root: no sign change in bracket");

    while (hi - lo > bisect_width) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }

    // Newton (or secant) polish, kept inside the bracket.
    double x = 0.5 * (lo + hi);
    double fx = f(x);
    for (int it = 0; it < 60; ++it) {
        double slope;
        if (df) {
            slope = df(x);
        } else {
            double h = std::max(1e-7, 1e-7 * std::fabs(x));
            if (x - h > lo && x + h < hi) {
                slope = (f(x + h) - f(x - h)) / (2 * h);
            } else {
                // Bracket too narrow (or f's domain ends at it): secant
                // through the bracket endpoints instead.
                slope = (fhi - flo) / (hi - lo);
            }
        }
        double step = (slope != 0.0) ? fx / slope : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi) || slope == 0.0) xn = 0.5 * (lo + hi);
        double fn = f(xn);
        if ((fn > 0) == (flo > 0)) lo = xn; else hi = xn;
        if (std::fabs(xn - x) <= polish_tol * std::max(1.0, std::fabs(xn)) ||
            fn == 0.0) {
            return xn;
        }
        x = xn;
        fx = fn;
    }
    return x;
}

namespace {

// Kronrod-15 abscissae and weights, with the embedded Gauss-7 rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b,
           std::size_t& evals) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double resg = 0.0, resk = 0.0;
    const double fc = f(c);
    resk = kWgk[7] * fc;
    resg = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = h * kXgk[i];
        const double f1 = f(c - x), f2 = f(c + x);
        resk += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }
    evals += 15;
    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * h;
    p.error = std::fabs((resk - resg) * h);
    return p;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double rel_tol, double abs_tol,
                           std::size_t max_intervals) {
    QuadratureResult res;
    if (a == b) return res;
    std::priority_queue<Panel> queue;
    Panel whole = gk15(f, a, b, res.evaluations);
    double total = whole.value, err = whole.error;
    queue.push(whole);
    while (err > std::max(abs_tol, rel_tol * std::fabs(total)) &&
           queue.size() < max_intervals) {
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            // Interval at rounding resolution; accept its estimate.
            total += 0.0;
            err -= worst.error;
            continue;
        }
        Panel left = gk15(f, worst.a, mid, res.evaluations);
        Panel right = gk15(f, mid, worst.b, res.evaluations);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    if (err > std::max(abs_tol, rel_tol * std::fabs(total)) &&
        err > 1e-10 * std::fabs(total)) {
        throw QuadratureFailure("adaptive integration: tolerance not met");
    }
    res.value = total;
    res.error = err;
    return res;
}

double log_integrate_exp(const std::function<double(double)>& G, double a,
                         double b, double shift, double rel_tol) {
    auto f = [&](double r) { return std::exp(G(r) - shift); };
    QuadratureResult q = integrate(f, a, b, rel_tol, 0.0);
    if (q.value <= 0.0)
        throw QuadratureFailure("log_integrate_exp: nonpositive integral");
    return shift + std::log(q.value);
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  int threads) {
    unsigned nthreads = threads > 0
                            ? static_cast<unsigned>(threads)
                            : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<std::size_t>(nthreads, count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr eptr;
    std::mutex mtx;
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mtx);
                    if (!eptr) eptr = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (eptr) std::rethrow_exception(eptr);
}

}  // namespace coulombgap
