#include "spinnet/trajectories.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace spinnet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Small counter-free generator with a per-trajectory state; uniform draws
/// are built from the top 53 bits so results do not depend on the standard
/// library's distribution implementations.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed ^ (0xA0761D6478BD642Full * (index + 1));
        for (auto& w : state_) w = s = splitmix64(s);
    }

    // xoshiro256++
    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on (0, 1]; never returns 0 so logs are safe.
    double next_open_unit() {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return 1.0 - u;
    }

private:
    std::uint64_t state_[4] = {};
};

struct Branch {
    std::uint32_t cfg = 0;
    std::complex<double> amp;
};

struct Accumulator {
    Eigen::MatrixXd sum;
    Eigen::MatrixXd sum_sq;
    std::uint64_t jumps = 0;

    Accumulator(Eigen::Index n_samples, Eigen::Index dim)
        : sum(Eigen::MatrixXd::Zero(n_samples, dim)),
          sum_sq(Eigen::MatrixXd::Zero(n_samples, dim)) {}

    void add(const Accumulator& o) {
        sum += o.sum;
        sum_sq += o.sum_sq;
        jumps += o.jumps;
    }
};

/// Solve sum_i w_i exp(-g_i dt) = target for dt >= 0 (monotone decreasing).
/// Returns +inf when the level is never reached (all decay rates of the
/// surviving weight are zero). Newton with a bisection bracket; exact log for
/// a single branch.
double invert_survival(const std::vector<double>& w, const std::vector<double>& g, double target) {
    double floor_value = 0.0;  // limit as dt -> inf
    for (std::size_t i = 0; i < w.size(); ++i)
        if (g[i] == 0.0) floor_value += w[i];
    if (target <= floor_value) return std::numeric_limits<double>::infinity();
    if (w.size() == 1) return std::log(w[0] / target) / g[0];

    auto f = [&](double dt) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::exp(-g[i] * dt);
        return s - target;
    };
    double lo = 0.0, hi = 1.0;
    while (f(hi) > 0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e18) return std::numeric_limits<double>::infinity();
    }
    double dt = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double s = 0.0, ds = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double e = w[i] * std::exp(-g[i] * dt);
            s += e;
            ds -= g[i] * e;
        }
        const double r = s - target;
        if (r > 0)
            lo = dt;
        else
            hi = dt;
        double step = ds != 0.0 ? -r / ds : 0.0;
        double cand = dt + step;
        if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
        if (std::abs(cand - dt) <= 1e-15 * std::max(1.0, dt)) return cand;
        dt = cand;
    }
    return dt;
}

void run_one(const LindbladModel& m, const std::vector<Branch>& initial, const TimeGrid& grid,
             Stream rng, Accumulator& acc) {
    const int n = m.n_nodes();
    std::vector<Branch> branches = initial;
    std::vector<double> weights(branches.size()), rates(branches.size());

    double t = grid.t0;
    std::size_t s = 0;
    double target = rng.next_open_unit();  // norm^2 threshold for the next jump

    auto record_until = [&](double t_stop) {
        // samples in (t, t_stop]: closed-form no-jump populations
        while (s < grid.samples.size() && grid.samples[s] <= t_stop) {
            const double dt = grid.samples[s] - t;
            double norm2 = 0.0;
            for (const auto& br : branches)
                norm2 += std::norm(br.amp) * std::exp(-m.outflow(br.cfg) * dt);
            for (const auto& br : branches) {
                const double p = std::norm(br.amp) * std::exp(-m.outflow(br.cfg) * dt) / norm2;
                acc.sum(static_cast<Eigen::Index>(s), br.cfg) += p;
                acc.sum_sq(static_cast<Eigen::Index>(s), br.cfg) += p * p;
            }
            ++s;
        }
    };

    while (true) {
        for (std::size_t i = 0; i < branches.size(); ++i) {
            weights[i] = std::norm(branches[i].amp);
            rates[i] = m.outflow(branches[i].cfg);
        }
        const double dt_jump = invert_survival(weights, rates, target);
        const double t_jump = t + dt_jump;

        if (!(t_jump < grid.t1)) {
            record_until(grid.t1);
            return;
        }
        record_until(t_jump);

        // advance amplitudes to the jump time and pick a channel with
        // probability proportional to rate * source population
        double total = 0.0;
        for (auto& br : branches) {
            const std::complex<double> phase(-0.5 * m.outflow(br.cfg) * dt_jump,
                                             -m.energy(br.cfg) * dt_jump);
            br.amp *= std::exp(phase);
            total += std::norm(br.amp) * m.outflow(br.cfg);
        }
        const double pick = rng.next_open_unit() * total;
        double running = 0.0;
        // rounding fallback: land on the last channel if the walk never crosses
        std::uint32_t landed = branches.back().cfg ^ (1u << (n - 1));
        bool chosen = false;
        for (const auto& br : branches) {
            const double w = std::norm(br.amp);
            for (int node = 0; node < n && !chosen; ++node) {
                running += w * m.out_rate(br.cfg, node);
                if (running >= pick) {
                    landed = br.cfg ^ (1u << node);
                    chosen = true;
                }
            }
            if (chosen) break;
        }
        // collapse: the jump operator maps every branch onto one configuration
        branches.assign(1, Branch{landed, 1.0});
        weights.assign(1, 1.0);
        rates.assign(1, 0.0);
        t = t_jump;
        target = rng.next_open_unit();
        ++acc.jumps;
    }
}

}  // namespace

TrajectoryStats run_trajectories(const LindbladModel& m, const Eigen::VectorXcd& psi0,
                                 const TimeGrid& grid, const TrajectoryPlan& plan, int n_workers) {
    grid.validate();
    if (plan.n_trajectories < 1)
        throw std::invalid_argument("run_trajectories: need at least one trajectory");
    if (psi0.size() != static_cast<Eigen::Index>(m.dim()))
        throw std::invalid_argument("run_trajectories: state dimension mismatch");
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("run_trajectories: initial state is not normalized");

    std::vector<Branch> initial;
    for (Eigen::Index i = 0; i < psi0.size(); ++i)
        if (psi0[i] != 0.0) initial.push_back({static_cast<std::uint32_t>(i), psi0[i]});

    const auto n_samples = static_cast<Eigen::Index>(grid.samples.size());
    const auto dim = static_cast<Eigen::Index>(m.dim());

    // Fixed-size blocks keep the reduction order independent of worker count.
    constexpr int kBlock = 256;
    const int n_blocks = (plan.n_trajectories + kBlock - 1) / kBlock;
    std::vector<Accumulator> block_acc(static_cast<std::size_t>(n_blocks),
                                       Accumulator(n_samples, dim));

    auto run_block = [&](int block) {
        const int lo = block * kBlock;
        const int hi = std::min(lo + kBlock, plan.n_trajectories);
        auto& acc = block_acc[static_cast<std::size_t>(block)];
        for (int i = lo; i < hi; ++i)
            run_one(m, initial, grid, Stream(plan.seed, static_cast<std::uint64_t>(i)), acc);
    };

    if (n_workers <= 1 || n_blocks == 1) {
        for (int b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) run_block(b);
        };
        std::vector<std::thread> pool;
        const int count = std::min(n_workers, n_blocks);
        pool.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Accumulator total(n_samples, dim);
    for (const auto& acc : block_acc) total.add(acc);

    TrajectoryStats out;
    out.times = grid.samples;
    out.n_trajectories = plan.n_trajectories;
    out.total_jumps = total.jumps;
    const double n = plan.n_trajectories;
    out.mean = total.sum / n;
    out.std_error.resize(n_samples, dim);
    for (Eigen::Index r = 0; r < n_samples; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) {
            const double mu = out.mean(r, c);
            double var = 0.0;
            if (plan.n_trajectories > 1)
                var = std::max(0.0, (total.sum_sq(r, c) - n * mu * mu) / (n - 1.0));
            out.std_error(r, c) = std::sqrt(var / n);
        }
    return out;
}

}  // namespace spinnet
