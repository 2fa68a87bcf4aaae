#include "fedalloc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "fedalloc/errors.hpp"

namespace fedalloc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kMethodOrder = {"proposed", "random_pf", "random_theta",
                                               "random_all"};

StreamTag method_tag(const std::string& method) {
    if (method == "proposed") return StreamTag::harmony;
    if (method == "random_pf") return StreamTag::baseline_pf;
    if (method == "random_theta") return StreamTag::baseline_theta;
    if (method == "random_all") return StreamTag::baseline_all;
    throw invalid_parameter("bench: unknown method '" + method + "'");
}

// Fixed float formatting keeps CSV output byte-stable.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void fill_totals(RunRecord& rec, const std::vector<DeviceProfile>& devices,
                 const AccuracyConfig& acc) {
    double rc = round_count(rec.allocation.theta, acc);
    for (std::size_t i = 0; i < devices.size(); ++i) {
        DeviceCost c = total_cost(devices[i], rec.allocation.p[i], rec.allocation.f[i],
                                  rec.allocation.theta, acc);
        rec.energy_total += rc * (c.e_cmp + c.e_up);
        rec.latency_total += rc * (c.t_cmp + c.t_up);
    }
}

RunRecord run_one(const ScenarioConfig& cfg, const std::string& method, std::uint64_t run_seed,
                  double dataset_scale, StreamTag tag, std::uint64_t stream_index) {
    ScenarioConfig scaled = cfg;
    scaled.dataset_scale = cfg.dataset_scale * dataset_scale;
    OptimizerConfig ocfg = scaled.optimizer_config();

    RunRecord rec;
    rec.method = method;
    rec.seed = run_seed;
    auto start = std::chrono::steady_clock::now();
    try {
        GeneratedScenario scenario = generate_scenario_rich(scaled, run_seed);
        RandomStream rng = RandomStream::derive(run_seed, stream_index, tag);
        OptimizationResult res;
        if (method == "proposed") {
            if (scaled.resample_sigma) {
                ChannelEvolver evolver{scaled.channel, scenario.channels,
                                       scenario.channel_streams};
                res = optimize(scenario.devices, ocfg, rng, &evolver);
            } else {
                res = optimize(scenario.devices, ocfg, rng);
            }
        } else if (method == "random_pf") {
            res = baseline_random_pf(scenario.devices, ocfg, rng);
        } else if (method == "random_theta") {
            res = baseline_random_theta(scenario.devices, ocfg, rng);
        } else if (method == "random_all") {
            res = baseline_random_all(scenario.devices, ocfg, rng);
        } else {
            throw invalid_parameter("bench: unknown method '" + method + "'");
        }
        rec.objective = res.objective;
        rec.feasible = res.feasible;
        rec.completed = true;
        rec.allocation = res.allocation;
        rec.theta = res.allocation.theta;
        rec.trace = res.trace;
        fill_totals(rec, scenario.devices, ocfg.accuracy);
    } catch (const infeasible_error&) {
        rec.objective = kNan;
        rec.feasible = false;
        rec.completed = false;
    }
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

void write_convergence(const std::string& path, const std::vector<std::string>& methods,
                       const std::vector<RunRecord>& first_seed_records) {
    std::ofstream out(path);
    out << "outer_iter";
    for (const auto& m : methods) out << "," << m;
    out << "\n";
    std::size_t rows = 1;
    for (const auto& rec : first_seed_records) rows = std::max(rows, rec.trace.size());
    for (std::size_t r = 0; r < rows; ++r) {
        out << r + 1;
        for (const auto& rec : first_seed_records) {
            // Incumbent traces persist, so shorter traces repeat their final value.
            double v = kNan;
            if (!rec.trace.empty()) v = rec.trace[std::min(r, rec.trace.size() - 1)];
            out << "," << fmt(v);
        }
        out << "\n";
    }
}

void write_comparison(const std::string& path, const std::vector<std::string>& methods,
                      const std::vector<std::vector<RunRecord>>& by_seed) {
    std::ofstream out(path);
    out << "seed";
    for (const auto& m : methods) out << "," << m;
    out << ",flags\n";
    for (const auto& row : by_seed) {
        out << row.front().seed;
        std::string flags;
        for (std::size_t m = 0; m < methods.size(); ++m) {
            const RunRecord& rec = row[m];
            out << "," << fmt(rec.objective);
            if (!rec.completed) {
                flags += (flags.empty() ? "" : ";") + rec.method + ":infeasible";
            } else if (!rec.feasible) {
                flags += (flags.empty() ? "" : ";") + rec.method + ":violates_budgets";
            }
        }
        out << "," << flags << "\n";
    }
}

void write_sweep(const std::string& path, const std::vector<SweepRecord>& sweep) {
    std::map<double, std::pair<double, int>> agg;
    for (const auto& s : sweep) {
        if (s.completed) {
            agg[s.multiplier].first += s.energy_total;
            agg[s.multiplier].second += 1;
        }
    }
    std::ofstream out(path);
    out << "multiplier,seed,energy_total,mean_energy\n";
    for (const auto& s : sweep) {
        auto it = agg.find(s.multiplier);
        double mean = (it != agg.end() && it->second.second > 0)
                          ? it->second.first / it->second.second
                          : kNan;
        out << fmt(s.multiplier) << "," << s.seed << "," << fmt(s.energy_total) << ","
            << fmt(mean) << "\n";
    }
}

}  // namespace

RunRecord run_method(const ScenarioConfig& cfg, const std::string& method,
                     std::uint64_t run_seed) {
    return run_one(cfg, method, run_seed, 1.0, method_tag(method), 0);
}

SuiteResult run_suite(const ScenarioConfig& cfg, const SuiteOptions& opts) {
    cfg.validate();
    if (opts.n_seeds < 1) throw invalid_parameter("bench: need at least one seed");
    std::vector<std::string> methods;
    for (const auto& m : kMethodOrder) {
        if (std::find(opts.methods.begin(), opts.methods.end(), m) != opts.methods.end())
            methods.push_back(m);
    }
    for (const auto& m : opts.methods) {
        (void)method_tag(m);  // reject unknown names early
    }
    if (methods.empty()) throw invalid_parameter("bench: empty method list");

    unsigned jobs = opts.jobs > 0 ? static_cast<unsigned>(opts.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());

    // Per-seed method runs; scheduling cannot affect results because every
    // run owns streams derived from its (seed, method) pair.
    std::vector<std::vector<RunRecord>> by_seed(static_cast<std::size_t>(opts.n_seeds));
    {
        std::vector<std::future<std::vector<RunRecord>>> futures;
        for (int r = 0; r < opts.n_seeds; ++r) {
            futures.push_back(std::async(std::launch::async, [&, r]() {
                std::uint64_t run_seed = cfg.seed + static_cast<std::uint64_t>(r);
                std::vector<RunRecord> row;
                for (const auto& m : methods)
                    row.push_back(run_one(cfg, m, run_seed, 1.0, method_tag(m), 0));
                return row;
            }));
            if (futures.size() >= jobs || r + 1 == opts.n_seeds) {
                for (std::size_t i = 0; i < futures.size(); ++i) {
                    std::size_t idx = static_cast<std::size_t>(r) + 1 - futures.size() + i;
                    by_seed[idx] = futures[i].get();
                }
                futures.clear();
            }
        }
    }

    SuiteResult result;
    for (const auto& row : by_seed)
        for (const auto& rec : row) result.records.push_back(rec);

    bool sweep_enabled = opts.run_sweep && std::find(methods.begin(), methods.end(),
                                                     "proposed") != methods.end();
    if (sweep_enabled) {
        std::vector<SweepRecord> sweep(kSweepMultipliers.size() *
                                       static_cast<std::size_t>(opts.n_seeds));
        std::vector<std::future<void>> futures;
        std::size_t slot = 0;
        for (std::size_t mi = 0; mi < kSweepMultipliers.size(); ++mi) {
            for (int r = 0; r < opts.n_seeds; ++r, ++slot) {
                futures.push_back(std::async(std::launch::async, [&, mi, r, slot]() {
                    std::uint64_t run_seed = cfg.seed + static_cast<std::uint64_t>(r);
                    RunRecord rec = run_one(cfg, "proposed", run_seed, kSweepMultipliers[mi],
                                            StreamTag::sweep, mi);
                    sweep[slot] = SweepRecord{kSweepMultipliers[mi], run_seed, rec.energy_total,
                                              rec.completed};
                }));
                if (futures.size() >= jobs) {
                    for (auto& fut : futures) fut.get();
                    futures.clear();
                }
            }
        }
        for (auto& fut : futures) fut.get();
        result.sweep = std::move(sweep);
    }

    std::filesystem::create_directories(opts.out_dir);
    auto path = [&](const char* name) {
        return (std::filesystem::path(opts.out_dir) / name).string();
    };
    write_convergence(path("convergence.csv"), methods, by_seed.front());
    write_comparison(path("comparison.csv"), methods, by_seed);
    if (sweep_enabled) write_sweep(path("energy_sweep.csv"), result.sweep);
    return result;
}

int report(const std::vector<RunRecord>& records, std::ostream& os) {
    struct Agg {
        int runs = 0, feasible = 0, completed = 0;
        double sum = 0.0;
        double min = std::numeric_limits<double>::infinity();
        double max = -std::numeric_limits<double>::infinity();
    };
    std::map<std::string, Agg> by_method;
    for (const auto& rec : records) {
        Agg& a = by_method[rec.method];
        ++a.runs;
        if (rec.completed) {
            ++a.completed;
            if (rec.feasible) ++a.feasible;
            a.sum += rec.objective;
            a.min = std::min(a.min, rec.objective);
            a.max = std::max(a.max, rec.objective);
        }
    }

    char line[256];
    os << "runs by method (" << records.size() << " rows)\n";
    std::snprintf(line, sizeof(line), "%-14s %5s %9s %12s %12s %12s\n", "method", "runs",
                  "feasible", "mean", "min", "max");
    os << line;
    for (const auto& m : kMethodOrder) {
        auto it = by_method.find(m);
        if (it == by_method.end()) continue;
        const Agg& a = it->second;
        if (a.completed > 0) {
            std::snprintf(line, sizeof(line), "%-14s %5d %9d %12.6g %12.6g %12.6g\n", m.c_str(),
                          a.runs, a.feasible, a.sum / a.completed, a.min, a.max);
        } else {
            std::snprintf(line, sizeof(line), "%-14s %5d %9d %12s %12s %12s\n", m.c_str(), a.runs,
                          a.feasible, "-", "-", "-");
        }
        os << line;
    }

    // Win rate: seeds on which the proposed objective is <= every completed
    // baseline objective.
    std::map<std::uint64_t, std::map<std::string, const RunRecord*>> by_seed;
    for (const auto& rec : records) by_seed[rec.seed][rec.method] = &rec;
    int wins = 0, comparisons = 0;
    for (const auto& [seed, row] : by_seed) {
        auto prop = row.find("proposed");
        if (prop == row.end() || !prop->second->completed) continue;
        bool any_baseline = false, won = true;
        for (const auto& [method, rec] : row) {
            if (method == "proposed" || !rec->completed) continue;
            any_baseline = true;
            won = won && prop->second->objective <= rec->objective;
        }
        if (any_baseline) {
            ++comparisons;
            if (won) ++wins;
        }
    }
    if (comparisons > 0) {
        std::snprintf(line, sizeof(line), "proposed win-rate: %.1f%% (%d/%d seeds)\n",
                      100.0 * wins / comparisons, wins, comparisons);
        os << line;
    }

    for (const auto& [method, a] : by_method) {
        if (a.completed < a.runs)
            os << "warning: method " << method << " had " << a.runs - a.completed
               << " infeasible run(s)\n";
        if (a.runs > 0 && a.feasible == 0)
            os << "warning: method " << method << " produced no feasible runs\n";
    }
    // Flagged rows are allowed; failures that abort a run surface as
    // exceptions before this point.
    return 0;
}

std::vector<RunRecord> read_comparison_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_parameter("report: cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw invalid_parameter("report: empty csv");
    std::vector<std::string> columns;
    {
        std::stringstream ss(header);
        std::string col;
        while (std::getline(ss, col, ',')) columns.push_back(col);
    }
    if (columns.size() < 3 || columns.front() != "seed" || columns.back() != "flags")
        throw invalid_parameter("report: unexpected comparison.csv header");

    std::vector<RunRecord> records;
    std::string row;
    while (std::getline(in, row)) {
        if (row.empty()) continue;
        std::stringstream ss(row);
        std::vector<std::string> cells;
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        cells.resize(columns.size());  // trailing empty flags cell
        std::uint64_t seed = std::stoull(cells.front());
        const std::string& flags = cells.back();
        for (std::size_t c = 1; c + 1 < columns.size(); ++c) {
            RunRecord rec;
            rec.method = columns[c];
            rec.seed = seed;
            rec.objective = std::strtod(cells[c].c_str(), nullptr);
            rec.completed = flags.find(rec.method + ":infeasible") == std::string::npos;
            rec.feasible = rec.completed &&
                           flags.find(rec.method + ":violates_budgets") == std::string::npos;
            records.push_back(rec);
        }
    }
    return records;
}

}  // namespace fedalloc
