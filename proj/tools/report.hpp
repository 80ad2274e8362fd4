#ifndef WFSEQ_TOOLS_REPORT_HPP
#define WFSEQ_TOOLS_REPORT_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wfseq/globalfe.hpp"

namespace wfseq::cli {

struct RunConfig {
  std::string command;
  std::vector<int> degrees;  // empty: per-check defaults
  std::string seq, diagram, lemma;
  std::optional<Bc> bc;
  int samples = 0;  // 0: per-check defaults
  std::uint64_t seed = 42;
  bool float_mode = false;
  double tol = 1e-9;  // float mode only
  std::string format = "json";
  std::string out;
};

struct Record {
  std::string check_id;
  std::string anchor;
  nlohmann::json params = nlohmann::json::object();
  bool pass = false;
  std::string witness_digest;
};

// A unit of work for the pool. Each task yields one or more records.
using Task = std::function<std::vector<Record>()>;

// Parses "3", "0..5" or "2,4". Throws Error(ConfigError).
std::vector<int> parse_degrees(const std::string& s);
// Throws Error(ConfigError) on bad selectors, degrees or sample counts.
void validate(const RunConfig& c);

std::vector<Task> dims_tasks(const RunConfig& c);
std::vector<Task> spot_tasks(const RunConfig& c);
std::vector<Task> rank_nullity_tasks(const RunConfig& c);
std::vector<Task> exactness_tasks(const RunConfig& c);
std::vector<Task> potential_tasks(const RunConfig& c);
std::vector<Task> unisolvency_tasks(const RunConfig& c);
std::vector<Task> commute_tasks(const RunConfig& c);
std::vector<Task> jump_tasks(const RunConfig& c);
std::vector<Task> identity_tasks(const RunConfig& c);
std::vector<Task> global_tasks(const RunConfig& c);
std::vector<Task> frame_tasks(const RunConfig& c);

// Runs tasks on the worker pool; records come back sorted by check_id.
std::vector<Record> run_tasks(const std::vector<Task>& tasks);

struct Criterion {
  int id = 0;
  std::string title;
  std::function<std::vector<Task>(const RunConfig&)> tasks;  // empty for the determinism check
};

// The acceptance suite. `report` runs every criterion with tasks.
std::vector<Criterion> acceptance_criteria();
std::vector<Task> command_tasks(const RunConfig& c);

std::string render_json(const std::vector<Record>& recs, const RunConfig& c);
std::string render_markdown(const std::vector<Record>& recs, const RunConfig& c);

// Exit status: 0 all passed, 1 some check failed, 2 configuration error.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

}  // namespace wfseq::cli

#endif
