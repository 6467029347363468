#include "respo/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace respo {

namespace {

// Millisecond value with microsecond resolution; fixed format so identical
// inputs serialize identically.
std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

}  // namespace

std::string to_json(const ResponsibilityReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json actors = nlohmann::ordered_json::object();
  for (const ActorResult& a : report.actors) {
    nlohmann::ordered_json entry;
    if (a.exact) {
      entry["value_num"] = a.exact->value.num().str();
      entry["value_den"] = a.exact->value.den().str();
      entry["value"] = a.exact->value.to_string();
      if (a.exact->witness) entry["witness"] = *a.exact->witness;
    } else if (a.sampled) {
      entry["mean"] = a.sampled->mean;
      entry["half_width"] = a.sampled->half_width;
      entry["samples"] = a.sampled->samples;
    }
    actors[a.name] = std::move(entry);
  }
  j["actors"] = std::move(actors);
  j["mode"] = report.mode;
  j["algorithm"] = report.algorithm;
  j["gamma_empty"] = report.gamma_empty;
  j["gamma_full"] = report.gamma_full;
  j["coalitions_evaluated"] = report.coalitions_evaluated;
  j["wall_ms"] = nlohmann::ordered_json::parse(format_ms(report.wall_ms));
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string to_table(const ResponsibilityReport& report) {
  size_t name_w = 5;
  for (const ActorResult& a : report.actors) name_w = std::max(name_w, a.name.size());

  std::ostringstream out;
  out << "mode: " << report.mode << "  algorithm: " << report.algorithm << "\n";
  for (const std::string& w : report.warnings) out << "warning: " << w << "\n";
  out << "\n";

  char buf[128];
  for (const ActorResult& a : report.actors) {
    out << a.name << std::string(name_w - a.name.size() + 2, ' ');
    if (a.exact) {
      std::snprintf(buf, sizeof buf, "%-12s (%.6f)", a.exact->value.to_string().c_str(),
                    a.exact->value.to_double());
      out << buf;
      if (a.exact->witness) {
        out << "  switches with {";
        for (size_t i = 0; i < a.exact->witness->size(); ++i)
          out << (i ? ", " : "") << (*a.exact->witness)[i];
        out << "}";
      }
    } else if (a.sampled) {
      std::snprintf(buf, sizeof buf, "%.6f +/- %.6f  (%llu samples)", a.sampled->mean,
                    a.sampled->half_width,
                    static_cast<unsigned long long>(a.sampled->samples));
      out << buf;
    }
    out << "\n";
  }

  out << "\n";
  out << "gamma(empty) = " << report.gamma_empty
      << "   gamma(all) = " << report.gamma_full << "\n";
  out << "coalitions evaluated: " << report.coalitions_evaluated << "\n";
  if (report.wall_ms > 0.0) out << "wall time: " << format_ms(report.wall_ms) << " ms\n";
  return out.str();
}

}  // namespace respo
