#include <cstdio>
#include <sstream>

#include "harmsum/cli.hpp"

namespace harmsum::cli {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_decomposition(const std::vector<std::pair<std::string, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string coef = terms[i].first;
    const bool negative = !coef.empty() && coef.front() == '-';
    if (negative) coef.erase(0, 1);
    if (i == 0) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (coef != "1") out += coef + "*";
    out += terms[i].second;
  }
  return out;
}

}  // namespace

nlohmann::ordered_json OutputRecord::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["inputs"] = inputs;
  if (const auto* d = std::get_if<double>(&value)) {
    j["value"] = *d;
  } else {
    j["value"] = std::get<std::string>(value);
  }
  if (decomposition) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [coef, atom] : *decomposition) arr.push_back({coef, atom});
    j["decomposition"] = arr;
  } else {
    j["decomposition"] = nullptr;
  }
  j["error_estimate"] = error_estimate ? nlohmann::ordered_json(*error_estimate) : nullptr;
  j["method"] = method;
  return j;
}

OutputRecord OutputRecord::from_json(const nlohmann::ordered_json& j) {
  OutputRecord r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  const auto& v = j.at("value");
  if (v.is_string()) {
    r.value = v.get<std::string>();
  } else {
    r.value = v.get<double>();
  }
  const auto& d = j.at("decomposition");
  if (!d.is_null()) {
    std::vector<std::pair<std::string, std::string>> terms;
    for (const auto& pair : d) terms.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    r.decomposition = std::move(terms);
  }
  const auto& e = j.at("error_estimate");
  if (!e.is_null()) r.error_estimate = e.get<double>();
  r.method = j.at("method").get<std::string>();
  return r;
}

std::string OutputRecord::to_plain() const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  out << "inputs:";
  for (const auto& [key, val] : inputs.items()) {
    out << " " << key << "=" << (val.is_string() ? val.get<std::string>() : val.dump());
  }
  out << "\n";
  if (const auto* d = std::get_if<double>(&value)) {
    out << "value: " << format_double(*d) << "\n";
  } else {
    out << "value: " << std::get<std::string>(value) << "\n";
  }
  if (decomposition) out << "decomposition: " << format_decomposition(*decomposition) << "\n";
  if (error_estimate) out << "error_estimate: " << format_double(*error_estimate) << "\n";
  out << "method: " << method << "\n";
  return out.str();
}

}  // namespace harmsum::cli
