// Derivative-free search over projective-measurement angles and over the
// Bloch sphere: coarse grid, then downhill-simplex refinement from the best
// grid points plus seeded random restarts.
#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "qcorr/geometry.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

enum class OptimSense { Maximize, Minimize };

struct OptimConfig {
    int grid_theta = 13;   // theta points per qubit on [0, pi/2]
    int grid_phi = 25;     // phi points per qubit on [0, 2 pi)
    int restarts = 2;      // seeded random simplex restarts
    double tol = 1e-9;     // simplex objective-spread convergence
    int max_iter = 500;    // per simplex run
    std::uint64_t seed = 20211;
    int grid_cap = 10000;  // cap on the full grid Cartesian product
};

struct OptimResult {
    double best_value = 0.0;
    std::vector<double> best_angles;
    long evaluations = 0;
    bool converged = false;
};

using Objective = std::function<double(const std::vector<double>&)>;

namespace detail {

class CountedObjective {
public:
    CountedObjective(const Objective& f, double sign) : f_(f), sign_(sign) {}

    double operator()(const std::vector<double>& x) {
        ++count_;
        const double v = sign_ * f_(x);
        if (!std::isfinite(v))
            throw Error(ErrorCode::NonFiniteObjective, "objective returned a non-finite value");
        return v;
    }

    long count() const noexcept { return count_; }

private:
    const Objective& f_;
    double sign_;
    long count_ = 0;
};

/// Nelder-Mead maximization; returns (value, point, converged).
struct SimplexOutcome {
    double value;
    std::vector<double> point;
    bool converged;
};

inline SimplexOutcome nelder_mead_max(CountedObjective& f, const std::vector<double>& start,
                                      double step, double tol, int max_iter) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> xs(n + 1, start);
    std::vector<double> fs(n + 1);
    for (std::size_t i = 0; i < n; ++i) xs[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) fs[i] = f(xs[i]);

    std::vector<std::size_t> ord(n + 1);
    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        std::iota(ord.begin(), ord.end(), 0);
        std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return fs[a] > fs[b]; });
        if (fs[ord.front()] - fs[ord.back()] < tol) {
            converged = true;
            break;
        }
        const std::size_t worst = ord.back();
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i)
            if (i != worst)
                for (std::size_t d = 0; d < n; ++d) centroid[d] += xs[i][d] / static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d) p[d] = centroid[d] + t * (xs[worst][d] - centroid[d]);
            return p;
        };

        const std::vector<double> refl = blend(-1.0);
        const double f_refl = f(refl);
        if (f_refl > fs[ord[0]]) {
            const std::vector<double> expd = blend(-2.0);
            const double f_expd = f(expd);
            if (f_expd > f_refl) {
                xs[worst] = expd;
                fs[worst] = f_expd;
            } else {
                xs[worst] = refl;
                fs[worst] = f_refl;
            }
        } else if (f_refl > fs[ord[n - 1]]) {
            xs[worst] = refl;
            fs[worst] = f_refl;
        } else {
            const std::vector<double> contr = blend(0.5);
            const double f_contr = f(contr);
            if (f_contr > fs[worst]) {
                xs[worst] = contr;
                fs[worst] = f_contr;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == ord[0]) continue;
                    for (std::size_t d = 0; d < n; ++d)
                        xs[i][d] = 0.5 * (xs[i][d] + xs[ord[0]][d]);
                    fs[i] = f(xs[i]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fs[i] > fs[best]) best = i;
    return {fs[best], xs[best], converged};
}

/// Shrink per-qubit grid axes until the full product respects the cap.
inline void apply_grid_cap(int n_qubits, int cap, int& gt, int& gp) {
    double per_qubit = static_cast<double>(cap);
    if (n_qubits == 2) per_qubit = std::floor(std::sqrt(static_cast<double>(cap)));
    if (static_cast<double>(gt) * gp <= per_qubit) return;
    const double s = std::sqrt(per_qubit / (static_cast<double>(gt) * gp));
    gt = std::max(3, static_cast<int>(gt * s));
    gp = std::max(4, static_cast<int>(gp * s));
    while (static_cast<double>(gt) * gp > per_qubit) {
        if (gp >= gt && gp > 4)
            --gp;
        else if (gt > 3)
            --gt;
        else
            break;
    }
}

/// Platform-stable uniform in [0, 1) (distribution classes are
/// implementation-defined).
inline double stable_uniform(std::mt19937_64& engine) { return (engine() >> 11) * 0x1.0p-53; }

/// Map a (theta, phi) pair to the canonical box via its measurement axis.
inline void canonicalize_pair(double& theta, double& phi) {
    const Vec3 m = {std::sin(2 * theta) * std::cos(phi), std::sin(2 * theta) * std::sin(phi),
                    std::cos(2 * theta)};
    theta = 0.5 * std::acos(std::clamp(m[2], -1.0, 1.0));
    const double sxy = std::hypot(m[0], m[1]);
    phi = sxy < 1e-12 ? 0.0 : std::atan2(m[1], m[0]);
    if (phi < 0.0) phi += 2 * kPi;
}

}  // namespace detail

/// Extremize an objective over 2 or 4 projective angles (theta_A, phi_A[, theta_B, phi_B]).
/// The angles parameterize projector pairs, and the objective must be invariant
/// under angle vectors that map to the same pair (everything derived from
/// measurement statistics is). Deterministic for a fixed config; grid ties
/// break toward the lowest grid index.
inline OptimResult optimize_angles(const Objective& objective, int n_angles, OptimSense sense,
                                   const OptimConfig& cfg = {},
                                   const std::vector<std::vector<double>>& extra_starts = {}) {
    if (n_angles != 2 && n_angles != 4)
        throw Error(ErrorCode::InvalidArgument, "optimize_angles supports 2 or 4 angles");
    const int n_qubits = n_angles / 2;
    detail::CountedObjective f(objective, sense == OptimSense::Maximize ? 1.0 : -1.0);

    int gt = std::max(2, cfg.grid_theta), gp = std::max(2, cfg.grid_phi);
    detail::apply_grid_cap(n_qubits, cfg.grid_cap, gt, gp);

    std::vector<double> thetas(gt), phis(gp);
    for (int i = 0; i < gt; ++i) thetas[i] = (kPi / 2) * i / (gt - 1);
    for (int i = 0; i < gp; ++i) phis[i] = (2 * kPi) * i / gp;

    const std::size_t n_points =
        static_cast<std::size_t>(gt) * gp * (n_qubits == 2 ? static_cast<std::size_t>(gt) * gp : 1);
    auto point_at = [&](std::size_t i) {
        std::vector<double> p(n_angles);
        if (n_qubits == 2) {
            p[3] = phis[i % gp];
            i /= gp;
            p[2] = thetas[i % gt];
            i /= gt;
        }
        p[1] = phis[i % gp];
        p[0] = thetas[i / gp];
        return p;
    };

    std::vector<double> values(n_points);
    {
        std::size_t i = 0;
        std::vector<double> x(n_angles);
        for (int it = 0; it < gt; ++it)
            for (int ip = 0; ip < gp; ++ip) {
                x[0] = thetas[it];
                x[1] = phis[ip];
                if (n_qubits == 1) {
                    values[i++] = f(x);
                } else {
                    for (int jt = 0; jt < gt; ++jt)
                        for (int jp = 0; jp < gp; ++jp) {
                            x[2] = thetas[jt];
                            x[3] = phis[jp];
                            values[i++] = f(x);
                        }
                }
            }
    }

    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    double best_v = values[idx[0]];
    std::vector<double> best_x = point_at(idx[0]);
    bool converged = false;

    std::vector<std::vector<double>> starts;
    for (std::size_t k = 0; k < std::min<std::size_t>(3, idx.size()); ++k)
        starts.push_back(point_at(idx[k]));
    for (const auto& s : extra_starts) starts.push_back(s);
    std::mt19937_64 rng(cfg.seed);
    for (int r = 0; r < cfg.restarts; ++r) {
        std::vector<double> s(n_angles);
        for (int q = 0; q < n_qubits; ++q) {
            s[2 * q] = (kPi / 2) * detail::stable_uniform(rng);
            s[2 * q + 1] = 2 * kPi * detail::stable_uniform(rng);
        }
        starts.push_back(std::move(s));
    }

    for (const auto& s : starts) {
        const auto run = detail::nelder_mead_max(f, s, 0.15, cfg.tol, cfg.max_iter);
        converged = converged || run.converged;
        if (run.value > best_v) {
            best_v = run.value;
            best_x = run.point;
        }
    }

    // canonicalization maps onto the same projector pair; re-evaluate so the
    // reported value is exactly the objective at the reported angles
    for (int q = 0; q < n_qubits; ++q) detail::canonicalize_pair(best_x[2 * q], best_x[2 * q + 1]);
    const double canon_v = f(best_x);

    OptimResult res;
    res.best_value = sense == OptimSense::Maximize ? canon_v : -canon_v;
    res.best_angles = best_x;
    res.evaluations = f.count();
    res.converged = converged;
    return res;
}

struct SphereResult {
    double best_value = 0.0;
    Vec3 best_direction{};
    long evaluations = 0;
    bool converged = false;
};

/// Maximize f over unit 3-vectors; `extra_seeds` are refinement starts on top
/// of the grid (e.g. known symmetry axes).
inline SphereResult maximize_over_sphere(const std::function<double(const Vec3&)>& f,
                                         const OptimConfig& cfg = {},
                                         const std::vector<Vec3>& extra_seeds = {}) {
    Objective obj = [&](const std::vector<double>& ab) { return f(sphere_point(ab[0], ab[1])); };
    detail::CountedObjective counted(obj, 1.0);

    int gt = std::max(3, cfg.grid_theta), gp = std::max(4, cfg.grid_phi);
    detail::apply_grid_cap(1, cfg.grid_cap, gt, gp);

    std::vector<std::pair<double, std::vector<double>>> grid;
    for (int i = 0; i < gt; ++i)
        for (int j = 0; j < gp; ++j) {
            const std::vector<double> x{kPi * i / (gt - 1), 2 * kPi * j / gp};
            grid.emplace_back(counted(x), x);
        }
    std::vector<std::size_t> idx(grid.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return grid[a].first > grid[b].first; });

    double best_v = grid[idx[0]].first;
    std::vector<double> best_x = grid[idx[0]].second;
    bool converged = false;

    std::vector<std::vector<double>> starts;
    for (std::size_t k = 0; k < std::min<std::size_t>(3, idx.size()); ++k)
        starts.push_back(grid[idx[k]].second);
    for (const Vec3& m : extra_seeds)
        starts.push_back({std::acos(std::clamp(m[2], -1.0, 1.0)), std::atan2(m[1], m[0])});
    std::mt19937_64 rng(cfg.seed);
    for (int r = 0; r < cfg.restarts; ++r)
        starts.push_back({kPi * detail::stable_uniform(rng), 2 * kPi * detail::stable_uniform(rng)});

    for (const auto& s : starts) {
        const auto run = detail::nelder_mead_max(counted, s, 0.15, cfg.tol, cfg.max_iter);
        converged = converged || run.converged;
        if (run.value > best_v) {
            best_v = run.value;
            best_x = run.point;
        }
    }

    SphereResult res;
    res.best_value = best_v;
    res.best_direction = sphere_point(best_x[0], best_x[1]);
    res.evaluations = counted.count();
    res.converged = converged;
    return res;
}

}  // namespace qcorr
