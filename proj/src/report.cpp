#include "envalg/report.hpp"

#include <sstream>

namespace envalg {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Error: return "ERROR";
  }
  return "ERROR";
}

std::size_t SuiteReport::count(Status s) const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.status == s;
  return n;
}

Status SuiteReport::verdict() const {
  if (count(Status::Error) > 0) return Status::Error;
  if (count(Status::Fail) > 0) return Status::Fail;
  return Status::Pass;
}

int SuiteReport::exit_code() const {
  switch (verdict()) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::Error: return 2;
  }
  return 2;
}

nlohmann::json SuiteReport::to_json(bool timings) const {
  nlohmann::json out;
  out["suite"] = suite;
  out["algebra"] = algebra;
  out["parameters"] = parameters;
  out["seed"] = seed;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j;
    j["id"] = c.id;
    j["status"] = to_string(c.status);
    if (c.residual) j["residual"] = *c.residual;
    j["details"] = c.details;
    if (timings) j["wall_ms"] = c.wall_ms;
    list.push_back(std::move(j));
  }
  out["checks"] = std::move(list);
  out["summary"] = {{"pass", count(Status::Pass)}, {"fail", count(Status::Fail)}, {"error", count(Status::Error)}};
  out["verdict"] = to_string(verdict());
  return out;
}

std::string SuiteReport::summary_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << to_string(c.status) << "  " << c.id;
    if (c.details.contains("note")) os << "  (" << c.details["note"].get<std::string>() << ")";
    os << "\n";
    if (c.status != Status::Pass && c.residual) os << "      residual: " << *c.residual << "\n";
    if (c.status == Status::Error && c.details.contains("error"))
      os << "      error: " << c.details["error"].get<std::string>() << "\n";
  }
  os << suite << " on " << algebra << ": " << count(Status::Pass) << " pass, " << count(Status::Fail) << " fail, "
     << count(Status::Error) << " error -> " << to_string(verdict()) << "\n";
  return os.str();
}

}  // namespace envalg
