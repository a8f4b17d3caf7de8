#pragma once

// Run reports: per-check records with a conjunctive overall status, printed as
// a table or as JSON.

#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qhh/hochschild.hpp"
#include "qhh/io.hpp"

namespace qhh {

struct CheckRecord {
  std::string name;
  std::string instance;
  bool pass = false;
  io::json dims = io::json::object();  // dimensions involved, free-form

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct ReportContext {
  int N = 0;
  fp::elem p = 0;
  std::optional<fp::elem> q;
  std::string hypothesis;
  friend bool operator==(const ReportContext&, const ReportContext&) = default;
};

inline ReportContext report_context(const QContext& c) { return {c.N(), c.p(), c.q(), to_string(c.level())}; }

struct RunReport {
  std::string command;
  std::optional<ReportContext> context;
  std::vector<CheckRecord> checks;
  std::optional<double> wall_clock_s;  // shown in tables, never serialized

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  void add(std::string name, std::string instance, bool pass, io::json dims = io::json::object()) {
    checks.push_back({std::move(name), std::move(instance), pass, std::move(dims)});
  }

  void add(const ReindexReport& r, const std::string& instance) {
    for (const auto& c : r.cells) {
      io::json d{{"p", c.p}, {"n", c.n}, {"lhs", c.lhs}, {"branch", to_string(c.branch.branch)},
                 {"index", c.branch.index}, {"rhs", c.rhs}};
      if (c.rhs_alt) d["rhs_alt"] = *c.rhs_alt;
      add(r.name, instance, c.pass, std::move(d));
    }
    if (r.cells.empty()) add(r.name, instance + " (no cells)", false);
  }
};

inline io::json to_json(const RunReport& r) {
  io::json j;
  j["schema"] = "qhh.report/1";
  j["command"] = r.command;
  if (r.context)
    j["context"] = {{"N", r.context->N}, {"p", r.context->p},
                    {"q", r.context->q ? io::json(*r.context->q) : io::json(nullptr)},
                    {"hypothesis", r.context->hypothesis}};
  io::json checks = io::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"instance", c.instance}, {"pass", c.pass}, {"dims", c.dims}});
  j["checks"] = std::move(checks);
  j["status"] = r.pass() ? "pass" : "fail";
  return j;
}

inline RunReport report_from_json(const io::json& j) {
  return io::detail::guarded([&] {
    io::detail::expect_schema(j, "qhh.report/1");
    RunReport r;
    r.command = j.at("command").get<std::string>();
    if (j.contains("context")) {
      const auto& c = j.at("context");
      ReportContext rc{c.at("N").get<int>(), c.at("p").get<fp::elem>(), std::nullopt, c.at("hypothesis").get<std::string>()};
      if (!c.at("q").is_null()) rc.q = c.at("q").get<fp::elem>();
      r.context = rc;
    }
    for (const auto& c : j.at("checks"))
      r.checks.push_back({c.at("name").get<std::string>(), c.at("instance").get<std::string>(), c.at("pass").get<bool>(), c.at("dims")});
    if (j.at("status").get<std::string>() != (r.pass() ? "pass" : "fail"))
      throw error(errc::invalid_input, "status disagrees with the per-check records");
    return r;
  });
}

inline void print_table(std::ostream& os, const RunReport& r) {
  os << "command: " << r.command << '\n';
  if (r.context) {
    os << "context: N=" << r.context->N << " p=" << r.context->p;
    if (r.context->q) os << " q=" << *r.context->q;
    os << " (" << r.context->hypothesis << ")\n";
  }
  for (const auto& c : r.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.instance.empty()) os << " [" << c.instance << "]";
    if (!c.dims.empty()) {
      os << ' ';
      bool first = true;
      for (auto it = c.dims.begin(); it != c.dims.end(); ++it) {
        os << (first ? "" : " ") << it.key() << '=' << (it->is_string() ? it->get<std::string>() : it->dump());
        first = false;
      }
    }
    os << '\n';
  }
  os << "status: " << (r.pass() ? "pass" : "fail") << " (" << r.checks.size() << " checks";
  if (r.wall_clock_s) {
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << *r.wall_clock_s;
    os << ", " << t.str() << " s";
  }
  os << ")\n";
}

}  // namespace qhh
