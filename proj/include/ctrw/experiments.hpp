#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ctrw {

struct ExperimentConfig {
    std::string experiment;
    std::string chain = "iid_pareto";
    double alpha = 0.5;
    double beta = 0.5;
    double c_alpha = 1.0;
    double c_beta_plus = 0.5;
    double c_beta_minus = 0.5;
    double t_star = 0.1;
    std::vector<std::uint64_t> k_list;  // scale parameters K_N
    std::size_t replicas = 10000;
    double horizon = 1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string output;       // path prefix for JSONL/CSV; empty = no files
    double truncation = 0.0;  // small-jump cutoff for levy paths

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);
    std::string canonical() const;    // canonical serialization
    std::string params_hash() const;  // stable hash of canonical()
};

struct ResultRecord {
    std::string experiment;
    std::string params_hash;
    std::string statistic;
    double value = 0.0;
    double standard_error = 0.0;
    std::size_t replicas = 0;
    double runtime = 0.0;  // seconds; excluded from canonical JSONL
};

// Run one experiment; deterministic given (config, seed) at any worker
// count. Writes JSONL + CSV next to config.output when set (atomically).
std::vector<ResultRecord> run(const ExperimentConfig& config);

// name -> one-line description of what each experiment verifies.
std::vector<std::pair<std::string, std::string>> list_experiments();

// canonical JSONL (no runtime field) and CSV renderings
std::string records_to_jsonl(const std::vector<ResultRecord>& records);
std::string records_to_csv(const std::vector<ResultRecord>& records);

// Worker count: CTRW_WORKERS env var, else hardware concurrency.
std::size_t worker_count();

// Deterministic replica map: fills out[i] = fn(i) using the worker pool.
void parallel_replicas(std::size_t n,
                       const std::function<double(std::size_t)>& fn,
                       std::vector<double>& out);

}  // namespace ctrw
