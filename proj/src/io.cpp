#include "unif/io.hpp"

#include <fstream>
#include <sstream>

namespace unif {

nlohmann::json signal_to_json(const Signal& f) {
  nlohmann::json j;
  j["offset"] = f.offset();
  std::vector<double> re, im;
  bool complex = false;
  for (long long x = f.lo(); x <= f.hi(); ++x) {
    Complex v = f.at(x);
    re.push_back(v.real());
    im.push_back(v.imag());
    if (v.imag() != 0.0) complex = true;
  }
  j["re"] = re;
  if (complex) j["im"] = im;
  return j;
}

Signal signal_from_json(const nlohmann::json& j) {
  try {
    long long offset = j.at("offset").get<long long>();
    std::vector<double> re = j.at("re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) {
      im = j.at("im").get<std::vector<double>>();
      if (im.size() != re.size()) throw IoError("signal: re/im length mismatch");
    }
    std::vector<Complex> vs(re.size());
    bool exact = true;
    for (std::size_t i = 0; i < re.size(); ++i) {
      vs[i] = Complex(re[i], im[i]);
      if (im[i] != 0.0 || (re[i] != 0.0 && re[i] != 1.0 && re[i] != -1.0)) exact = false;
    }
    return Signal::from_values(offset, vs, exact);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("signal: ") + e.what());
  }
}

Signal load_signal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return signal_from_json(j);
}

void save_signal(const std::string& path, const Signal& f) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << signal_to_json(f).dump(2) << "\n";
}

std::vector<long long> load_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<long long> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    long long v;
    try {
      v = std::stoll(line, &pos);
    } catch (const std::exception&) {
      throw IoError(path + ": malformed integer '" + line + "'");
    }
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\r')) ++pos;
    if (pos != line.size()) throw IoError(path + ": malformed integer '" + line + "'");
    if (!out.empty() && v <= out.back()) throw IoError(path + ": entries must be strictly ascending");
    out.push_back(v);
  }
  return out;
}

void save_set(const std::string& path, const std::vector<long long>& A) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  for (long long x : A) out << x << "\n";
}

std::string witnesses_csv(const std::vector<ProgressionWitness>& ws) {
  std::ostringstream out;
  out << "x,y\n";
  for (const auto& w : ws) out << w.x << "," << w.y << "\n";
  return out.str();
}

const char* status_name(IterateStatus s) {
  switch (s) {
    case IterateStatus::kProgressionFound: return "progression_found";
    case IterateStatus::kNTooSmall: return "N_too_small";
    case IterateStatus::kDensityCapped: return "density_capped";
    case IterateStatus::kMaxSteps: return "max_steps";
  }
  return "unknown";
}

std::string trace_csv(const IncrementTrace& trace) {
  std::ostringstream out;
  out << "i,N_i,q_i,alpha_i,qprime,a,Nprime,alpha_new,status\n";
  for (const IncrementStep& s : trace.steps)
    out << s.i << "," << s.N << "," << s.q << "," << s.alpha.str() << "," << s.qprime << ","
        << s.a << "," << s.Nprime << "," << s.alpha_new.str() << ",\n";
  out << trace.steps.size() << "," << trace.final_N << "," << trace.final_q << ","
      << trace.final_alpha.str() << ",,,,," << status_name(trace.status) << "\n";
  return out.str();
}

}  // namespace unif
