#include "branchdecide/search.hpp"

#include "branchdecide/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

namespace branchdecide {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kBlock = 2048;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kSaturated / a) return kSaturated;
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return b > kSaturated - a ? kSaturated : a + b; }

std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r = sat_mul(r, base);
    return r;
}

[[noreturn]] void too_large(std::uint64_t count, std::uint64_t cap) {
    throw Error(ErrorKind::GridTooLarge,
                (count == kSaturated ? std::string("more than 2^64") : std::to_string(count)) +
                    " scenarios exceed the cap of " + std::to_string(cap) +
                    " (set BRANCHDECIDE_GRID_CAP to raise it)");
}

void validate_grid(const GridSpec& spec) {
    if (spec.reward_grid.empty() || spec.weight_grid.empty() || spec.root_reward_grid.empty()) {
        throw Error(ErrorKind::InvalidArgument, "grids must be nonempty");
    }
    for (const Rational& w : spec.weight_grid) {
        if (w.sign() <= 0 || w > Rational(1)) {
            throw Error(ErrorKind::InvalidArgument, "grid weight " + w.to_string() + " outside (0,1]");
        }
    }
    if (spec.max_root_branches == 0 || spec.max_option_branches == 0) {
        throw Error(ErrorKind::InvalidArgument, "branch limits must be at least 1");
    }
}

// Every game with 1..max_branches branches drawn from the grids, in
// lexicographic order of (reward index, weight index) per branch.
std::vector<Game> enumerate_games(const std::vector<Rational>& rewards, const std::vector<Rational>& weights,
                                  std::size_t max_branches, const std::string& prefix, std::uint64_t cap) {
    std::vector<Game> out;
    std::vector<Branch> current;
    auto recurse = [&](auto& self, std::size_t remaining, const Rational& mass) -> void {
        if (remaining == 0) {
            if (mass == Rational(1)) {
                out.emplace_back(prefix + std::to_string(out.size()), current);
                if (out.size() > cap) too_large(out.size(), cap);
            }
            return;
        }
        for (const Rational& r : rewards) {
            for (const Rational& w : weights) {
                Rational next = mass + w;
                if (next > Rational(1)) continue;
                current.push_back({r, w});
                self(self, remaining - 1, next);
                current.pop_back();
            }
        }
    };
    for (std::size_t m = 1; m <= max_branches; ++m) recurse(recurse, m, Rational(0));
    return out;
}

}  // namespace

std::uint64_t default_grid_cap() {
    if (const char* env = std::getenv("BRANCHDECIDE_GRID_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 50'000'000;
}

ScenarioSpace::ScenarioSpace(const GridSpec& spec, std::uint64_t cap) {
    validate_grid(spec);
    roots_ = enumerate_games(spec.root_reward_grid, spec.weight_grid, spec.max_root_branches, "root", cap);
    options_ = enumerate_games(spec.reward_grid, spec.weight_grid, spec.max_option_branches, "opt", cap);
    const std::uint64_t per_arm = sat_mul(options_.size(), options_.size());
    for (const Game& root : roots_) {
        root_offsets_.push_back(total_);
        total_ = sat_add(total_, sat_pow(per_arm, root.size()));
    }
    if (total_ > cap) too_large(total_, cap);
}

DiachronicScenario ScenarioSpace::at(std::uint64_t index) const {
    if (index >= total_) throw Error(ErrorKind::InvalidArgument, "scenario index out of range");
    auto it = std::upper_bound(root_offsets_.begin(), root_offsets_.end(), index);
    std::size_t r = static_cast<std::size_t>(it - root_offsets_.begin()) - 1;
    std::uint64_t local = index - root_offsets_[r];
    const Game& root = roots_[r];
    const std::size_t arms = root.size();
    std::vector<std::size_t> digits(2 * arms);
    for (std::size_t pos = digits.size(); pos-- > 0;) {
        digits[pos] = static_cast<std::size_t>(local % options_.size());
        local /= options_.size();
    }
    DiachronicScenario s{"s" + std::to_string(index), root, {}};
    for (std::size_t i = 0; i < arms; ++i) {
        s.options.emplace_back(options_[digits[2 * i]], options_[digits[2 * i + 1]]);
    }
    return s;
}

void for_each_scenario(const GridSpec& spec, const std::function<bool(const DiachronicScenario&)>& visit,
                       std::uint64_t cap) {
    ScenarioSpace bounds(spec, cap);  // validation and cap only
    const auto& options = bounds.option_games();
    std::uint64_t counter = 0;
    for (const Game& root : bounds.root_games()) {
        DiachronicScenario s{"", root, {}};
        bool keep_going = true;
        auto arm = [&](auto& self, std::size_t i) -> void {
            if (!keep_going) return;
            if (i == root.size()) {
                s.name = "s" + std::to_string(counter++);
                keep_going = visit(s);
                return;
            }
            for (const Game& h : options) {
                for (const Game& h_prime : options) {
                    s.options.emplace_back(h, h_prime);
                    self(self, i + 1);
                    s.options.pop_back();
                    if (!keep_going) return;
                }
            }
        };
        arm(arm, 0);
        if (!keep_going) return;
    }
}

SearchResult find_violation(const Agent& a, const GridSpec& spec, Axiom axiom, unsigned threads,
                            std::uint64_t cap) {
    if (axiom != Axiom::Diachronic) {
        throw Error(ErrorKind::InvalidArgument, "only the diachronic axiom can be searched on a grid");
    }
    ScenarioSpace space(spec, cap);
    SearchResult result;
    result.space_size = space.size();
    if (space.size() == 0) return result;

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t blocks = (space.size() + kBlock - 1) / kBlock;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));

    std::atomic<std::uint64_t> next_block{0};
    std::atomic<std::uint64_t> best{kSaturated};
    std::mutex hit_mutex;

    auto worker = [&] {
        for (;;) {
            std::uint64_t b = next_block.fetch_add(1);
            std::uint64_t begin = b * kBlock;
            if (b >= blocks || begin >= best.load()) return;
            std::uint64_t end = std::min(space.size(), begin + kBlock);
            for (std::uint64_t i = begin; i < end; ++i) {
                DiachronicScenario s = space.at(i);
                AxiomReport report = check_diachronic(a, s);
                if (report.verdict != Verdict::Violated) continue;
                std::lock_guard lock(hit_mutex);
                if (i < best.load()) {
                    best.store(i);
                    result.hit = SearchHit{i, std::move(s), std::move(report)};
                }
                break;
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return result;
}

std::uint64_t count_violations(const Agent& a, const GridSpec& spec, std::uint64_t cap) {
    std::uint64_t violations = 0;
    for_each_scenario(
        spec,
        [&](const DiachronicScenario& s) {
            if (check_diachronic(a, s).verdict == Verdict::Violated) ++violations;
            return true;
        },
        cap);
    return violations;
}

}  // namespace branchdecide
