// io.hpp - File formats: Signal JSON, set files (ascending integers, one
// per line), witness CSV, and increment trace CSV.

#pragma once

#include "unif/increment.hpp"
#include "unif/signal.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace unif {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"offset": int, "re": [...], "im": [...]}; "im" omitted means real.
nlohmann::json signal_to_json(const Signal& f);
Signal signal_from_json(const nlohmann::json& j);

Signal load_signal(const std::string& path);
void save_signal(const std::string& path, const Signal& f);

std::vector<long long> load_set(const std::string& path);  // must be ascending
void save_set(const std::string& path, const std::vector<long long>& A);

std::string witnesses_csv(const std::vector<ProgressionWitness>& ws);
std::string trace_csv(const IncrementTrace& trace);

const char* status_name(IterateStatus s);

}  // namespace unif
