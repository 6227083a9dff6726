#include <Eigen/Core>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <thread>

#include "pdolab/experiments.hpp"

extern "C" const char fftw_version[];

namespace pdolab {

namespace {

// Shortest round-trip form; identical bits give identical text.
std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json num(double v) {
  if (std::isfinite(v)) return v;
  return fmt(v);
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Flagged:
      return "flagged";
  }
  return "?";
}

bool Quantity::holds() const {
  if (relation.empty()) return true;
  if (std::isnan(value)) return false;
  if (relation == "<=") return value <= tolerance;
  if (relation == ">=") return value >= tolerance;
  if (relation == "==") return value == tolerance;
  return false;
}

ReportRecord& ReportRecord::report(const std::string& name, double v) {
  quantities.push_back({name, v, "", 0.0});
  return *this;
}

ReportRecord& ReportRecord::require(const std::string& name, double v, const std::string& rel, double tol) {
  quantities.push_back({name, v, rel, tol});
  return *this;
}

Verdict ReportRecord::verdict() const {
  for (const auto& q : quantities)
    if (!q.holds()) return Verdict::Fail;
  return flagged ? Verdict::Flagged : Verdict::Pass;
}

int RunResult::failures() const {
  int f = 0;
  for (const auto& r : records) f += r.verdict() == Verdict::Fail;
  return f;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& os, const RunResult& r) {
  os << "scenario,case_id,label,quantity,value,relation,tolerance,verdict,note\r\n";
  for (const auto& rec : r.records) {
    std::string head = csv_escape(rec.scenario) + "," + std::to_string(rec.case_id) + "," + csv_escape(rec.label) + ",";
    std::string tail = std::string(",") + verdict_name(rec.verdict()) + "," + csv_escape(rec.note) + "\r\n";
    if (rec.quantities.empty()) os << head << ",,,," << tail.substr(1);
    for (const auto& q : rec.quantities) {
      os << head << csv_escape(q.name) << "," << fmt(q.value) << "," << csv_escape(q.relation) << ","
         << (q.relation.empty() ? "" : fmt(q.tolerance)) << tail;
    }
  }
}

void write_json(std::ostream& os, const RunResult& r) {
  using nlohmann::json;
  json recs = json::array();
  int pass = 0, fail = 0, flagged = 0;
  for (const auto& rec : r.records) {
    json qs = json::array();
    for (const auto& q : rec.quantities) {
      json e = {{"name", q.name}, {"value", num(q.value)}};
      if (!q.relation.empty()) {
        e["relation"] = q.relation;
        e["tolerance"] = num(q.tolerance);
        e["holds"] = q.holds();
      }
      qs.push_back(e);
    }
    Verdict v = rec.verdict();
    pass += v == Verdict::Pass;
    fail += v == Verdict::Fail;
    flagged += v == Verdict::Flagged;
    recs.push_back({{"scenario", rec.scenario},
                    {"case_id", rec.case_id},
                    {"label", rec.label},
                    {"verdict", verdict_name(v)},
                    {"note", rec.note},
                    {"runtime_s", rec.runtime},
                    {"quantities", qs}});
  }
  json env = {{"compiler", __VERSION__},
              {"cxx_standard", static_cast<long>(__cplusplus)},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)},
              {"fftw", std::string(fftw_version)},
              {"hardware_threads", std::thread::hardware_concurrency()},
              {"generated_utc", utc_now()}};
  json doc = {{"scenario", r.scenario},
              {"seed", r.seed},
              {"workers", r.workers},
              {"runtime_s", r.runtime},
              {"summary", {{"pass", pass}, {"fail", fail}, {"flagged", flagged}}},
              {"environment", env},
              {"records", recs}};
  os << doc.dump(2) << "\n";
}

void write_outputs(const RunResult& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::filesystem::path base = std::filesystem::path(dir) / r.scenario;
  std::ofstream csv(base.string() + ".csv", std::ios::binary);
  std::ofstream js(base.string() + ".json", std::ios::binary);
  if (!csv || !js) throw std::runtime_error("cannot write reports under " + dir);
  write_csv(csv, r);
  write_json(js, r);
}

}  // namespace pdolab
