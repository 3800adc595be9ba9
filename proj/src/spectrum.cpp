#include "qbt/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "qbt/linalg.hpp"
#include "qbt/rng.hpp"

namespace qbt {

SingularSpectrum SingularSpectrum::from(std::vector<double> values) {
    SingularSpectrum s;
    s.values = std::move(values);
    std::sort(s.values.begin(), s.values.end(), std::greater<double>());
    s.floor = s.values.empty() ? 0.0 : 1e-12 * s.values.front();
    s.validate();
    return s;
}

void SingularSpectrum::validate() const {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw Error("SingularSpectrum: values must be finite and nonnegative");
        if (i > 0 && values[i] > values[i - 1] * (1.0 + 1e-14))
            throw Error("SingularSpectrum: values must be nonincreasing");
    }
}

std::size_t SingularSpectrum::count_above_floor() const {
    std::size_t n = 0;
    while (n < values.size() && values[n] > floor) ++n;
    return n;
}

DecayFit fit_decay(const SingularSpectrum& s, FitWindow window) {
    const std::size_t above = s.count_above_floor();
    std::size_t k_min = std::max<std::size_t>(window.k_min, 1);
    std::size_t k_max = window.k_max ? std::min(window.k_max, above) : above;
    if (k_max < k_min + 8)
        throw Error("fit_decay: fewer than 9 usable values in the window");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = double(k_max - k_min + 1);
    for (std::size_t k = k_min; k <= k_max; ++k) {
        const double x = std::log(double(k));
        const double y = std::log(s.values[k - 1]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double icept = (sy - slope * sx) / n;
    double ss_res = 0.0;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        const double x = std::log(double(k));
        const double r = std::log(s.values[k - 1]) - (icept + slope * x);
        ss_res += r * r;
    }
    DecayFit f;
    f.exponent = -slope;
    f.intercept = icept;
    f.k_min = k_min;
    f.k_max = k_max;
    f.stderr_exponent = (n > 2) ? std::sqrt(ss_res / (n - 2.0) / (sxx - sx * sx / n)) : 0.0;
    return f;
}

SchattenSum schatten_sum(const SingularSpectrum& s, double p) {
    if (!(p > 0.0)) throw Error("schatten_sum: need p > 0");
    SchattenSum out;
    const std::size_t n = s.count_above_floor();
    for (std::size_t k = 0; k < n; ++k) out.partial_sum += std::pow(s.values[k], p);
    if (n < 16) {
        // finite rank within resolution: the partial sum is the sum
        out.verdict = "convergent";
        out.tail_exponent = std::numeric_limits<double>::infinity();
        return out;
    }
    // local decay exponent over the last factor-of-2 stretch
    const std::size_t hi = n, lo = std::max<std::size_t>(n / 2, 6);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double cnt = 0;
    for (std::size_t k = lo; k <= hi; ++k) {
        const double x = std::log(double(k));
        const double y = std::log(s.values[k - 1]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        cnt += 1;
    }
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    out.tail_exponent = -slope;
    const double pr = p * out.tail_exponent;
    if (pr > 1.05) out.verdict = "convergent";
    else if (pr < 0.95) out.verdict = "divergent";
    else out.verdict = "inconclusive";
    return out;
}

namespace {

Matrix haar_unitary(Rng& rng, int n) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal_cx();
    return range_basis(g);   // QR-like orthonormalization of full-rank Gaussian
}

Matrix power_law_matrix(Rng& rng, int n, double r) {
    Matrix u = haar_unitary(rng, n);
    Matrix v = haar_unitary(rng, n);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cx sum = 0.0;
            for (int k = 0; k < n; ++k)
                sum += u(i, k) * std::pow(k + 1.0, -r) * std::conj(v(j, k));
            a(i, j) = sum;
        }
    return a;
}

} // namespace

ProductLawReport product_law_test(double r, double s, int n_trials, int dim,
                                  std::uint64_t seed, Exec exec) {
    if (dim < 24) throw Error("product_law_test: dimension too small for a fit");
    ProductLawReport rep;
    rep.trials = n_trials;
    rep.min_fitted_exponent = std::numeric_limits<double>::infinity();
    rep.worst_margin = -std::numeric_limits<double>::infinity();

    std::vector<double> margins(n_trials);
    std::vector<double> exponents(n_trials);
    std::vector<int> ok(n_trials, 1);

    Rng parent(seed);
    parallel_for(exec, n_trials, [&](std::ptrdiff_t trial) {
        Rng rng = parent.spawn(static_cast<std::uint64_t>(trial) + 1);
        Matrix a = power_law_matrix(rng, dim, r);
        Matrix b = power_law_matrix(rng, dim, s);
        auto sa = singular_values(a, Exec::serial);
        auto sb = singular_values(b, Exec::serial);
        auto sab = singular_values(mul(a, b), Exec::serial);
        double worst = -std::numeric_limits<double>::infinity();
        bool good = true;
        for (int n2 = 1; 2 * n2 - 1 <= dim; ++n2) {
            const double lhs = sab[2 * n2 - 2];
            const double rhs = sa[n2 - 1] * sb[n2 - 1];
            const double slack = 1e-12 * (rhs + sab[0]);
            worst = std::max(worst, lhs - rhs);
            if (lhs > rhs + slack) good = false;
        }
        margins[trial] = worst;
        ok[trial] = good ? 1 : 0;
        SingularSpectrum sp = SingularSpectrum::from(sab);
        exponents[trial] = fit_decay(sp).exponent;
    });

    for (int i = 0; i < n_trials; ++i) {
        rep.inequality_ok = rep.inequality_ok && ok[i] == 1;
        rep.worst_margin = std::max(rep.worst_margin, margins[i]);
        rep.min_fitted_exponent = std::min(rep.min_fitted_exponent, exponents[i]);
    }
    return rep;
}

SingularSpectrum sobolev_embedding_svals(double t_order, int modes) {
    if (t_order < 0.0) throw Error("sobolev_embedding_svals: need t >= 0");
    std::vector<double> vals;
    vals.push_back(1.0);   // k = 0
    for (int k = 1; k <= modes; ++k) {
        const double v = std::pow(1.0 + double(k) * k, -0.5 * t_order);
        vals.push_back(v);
        vals.push_back(v);
    }
    return SingularSpectrum::from(std::move(vals));
}

LambdaIndependence lambda_independence_test(const SingularSpectrum& s1,
                                            const SingularSpectrum& s2,
                                            FitWindow window) {
    LambdaIndependence out;
    out.fit1 = fit_decay(s1, window);
    out.fit2 = fit_decay(s2, window);
    out.exponent_difference = std::abs(out.fit1.exponent - out.fit2.exponent);
    return out;
}

SingularSpectrum merge_mode_spectrum(const std::vector<double>& per_mode) {
    std::vector<double> merged;
    for (std::size_t k = 0; k < per_mode.size(); ++k) {
        merged.push_back(per_mode[k]);
        if (k > 0) merged.push_back(per_mode[k]);   // modes +k and -k
    }
    return SingularSpectrum::from(std::move(merged));
}

} // namespace qbt
