#include "qdk/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace qdk {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

bool vertex_less(const Vertex& a, const Vertex& b) {
    if (a.f != b.f) return a.f < b.f;
    return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
}

double eval(const Objective& f, const std::vector<double>& x) {
    const double v = f(x);
    return std::isnan(v) ? INFINITY : v;
}

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

bool better_point(const LocalMinimum& a, const LocalMinimum& b, double tie) {
    if (a.value < b.value - tie) return true;
    if (b.value < a.value - tie) return false;
    return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
}

LocalMinimum nelder_mead(const Objective& f, std::vector<double> x0, const SimplexOptions& opts) {
    const std::size_t n = x0.size();
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({x0, eval(f, x0)});
    for (std::size_t i = 0; i < n; ++i) {
        auto x = x0;
        x[i] += opts.initial_step;
        simplex.push_back({x, eval(f, x)});
    }

    LocalMinimum out;
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        std::sort(simplex.begin(), simplex.end(), vertex_less);
        if (simplex.back().f - simplex.front().f <= opts.tolerance) {
            out.converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);

        const auto along = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (simplex.back().x[i] - centroid[i]);
            return Vertex{x, eval(f, x)};
        };

        Vertex reflected = along(-1.0);
        if (reflected.f < simplex.front().f) {
            Vertex expanded = along(-2.0);
            simplex.back() = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
            continue;
        }
        if (reflected.f < simplex[n - 1].f) {
            simplex.back() = std::move(reflected);
            continue;
        }
        Vertex contracted = reflected.f < simplex.back().f ? along(-0.5) : along(0.5);
        if (contracted.f < std::min(reflected.f, simplex.back().f)) {
            simplex.back() = std::move(contracted);
            continue;
        }
        for (std::size_t v = 1; v <= n; ++v) {
            for (std::size_t i = 0; i < n; ++i)
                simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
            simplex[v].f = eval(f, simplex[v].x);
        }
    }
    std::sort(simplex.begin(), simplex.end(), vertex_less);
    out.x = simplex.front().x;
    out.value = simplex.front().f;
    out.iterations = it;
    return out;
}

LocalMinimum lbfgs(const GradientObjective& fg, std::vector<double> x, const GradientOptions& opts) {
    const std::size_t n = x.size();
    std::vector<double> g(n), g_new(n), x_new(n), dir(n);
    double f = fg(x, g);

    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;
    int stalled = 0;

    LocalMinimum out;
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        if (inf_norm(g) < opts.gradient_tolerance) {
            out.converged = true;
            break;
        }

        // Two-loop recursion for dir = -H g.
        dir = g;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t k = s_hist.size(); k-- > 0;) {
            alpha[k] = rho_hist[k] * dot(s_hist[k], dir);
            for (std::size_t i = 0; i < n; ++i) dir[i] -= alpha[k] * y_hist[k][i];
        }
        if (!s_hist.empty()) {
            const double gamma = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
            for (auto& d : dir) d *= gamma;
        } else {
            const double scale = 1.0 / std::max(1.0, std::sqrt(dot(g, g)));
            for (auto& d : dir) d *= scale;
        }
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * dot(y_hist[k], dir);
            for (std::size_t i = 0; i < n; ++i) dir[i] += (alpha[k] - beta) * s_hist[k][i];
        }
        for (auto& d : dir) d = -d;

        double slope = dot(g, dir);
        if (!(slope < 0.0)) {
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            const double scale = 1.0 / std::max(1.0, std::sqrt(dot(g, g)));
            for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i] * scale;
            slope = dot(g, dir);
        }

        double step = 1.0;
        double f_new = f;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * dir[i];
            f_new = fg(x_new, g_new);
            if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (s_hist.empty()) {
                // Steepest descent cannot make progress either: numerically stationary.
                out.converged = true;
                break;
            }
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            continue;
        }

        std::vector<double> s(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - x[i];
            y[i] = g_new[i] - g[i];
        }
        const double sy = dot(s, y);
        if (sy > 1e-16 * std::sqrt(dot(s, s) * dot(y, y))) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opts.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }

        const double decrease = f - f_new;
        x.swap(x_new);
        g.swap(g_new);
        f = f_new;
        stalled = decrease <= opts.value_tolerance * std::max(1.0, std::abs(f)) ? stalled + 1 : 0;
        if (stalled >= 3) {
            out.converged = true;
            break;
        }
    }
    out.x = std::move(x);
    out.value = f;
    out.iterations = it;
    return out;
}

}  // namespace qdk
