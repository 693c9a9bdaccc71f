#include "gaussep/state_file.hpp"

#include <charconv>

#include "json.hpp"

namespace gaussep {

using nlohmann::json;

namespace {

[[noreturn]] void format_error(const std::string& what) { throw Error(ErrorCode::Format, what); }

double number(const json& j, const char* what) {
  if (!j.is_number()) format_error(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

GaussianState parse_state_file(std::string_view text, double tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    format_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) format_error("state file must be a JSON object");

  const auto conv = doc.find("convention");
  if (conv == doc.end() || !conv->is_object()) format_error("missing convention block");
  const auto hbar = conv->find("hbar");
  const auto ordering = conv->find("ordering");
  const auto vac = conv->find("vacuum_variance");
  if (hbar == conv->end() || ordering == conv->end() || vac == conv->end())
    format_error("convention block needs hbar, ordering and vacuum_variance");
  if (number(*hbar, "convention.hbar") != 1.0) format_error("convention.hbar must be 1");
  if (!ordering->is_string() || ordering->get<std::string>() != kOrdering)
    format_error("convention.ordering must be \"q1 p1 q2 p2\"");
  if (number(*vac, "convention.vacuum_variance") != 0.5)
    format_error("convention.vacuum_variance must be 0.5");

  const auto cov = doc.find("cov");
  if (cov == doc.end() || !cov->is_array() || cov->size() != 4)
    format_error("cov must be a 4x4 array");
  Mat4 raw;
  for (std::size_t i = 0; i < 4; ++i) {
    const json& row = (*cov)[i];
    if (!row.is_array() || row.size() != 4) format_error("cov must be a 4x4 array");
    for (std::size_t j = 0; j < 4; ++j) raw(i, j) = number(row[j], "cov entry");
  }

  Vec4 mean{};
  if (const auto m = doc.find("mean"); m != doc.end()) {
    if (!m->is_array() || m->size() != 4) format_error("mean must be an array of 4 numbers");
    for (std::size_t i = 0; i < 4; ++i) mean[i] = number((*m)[i], "mean entry");
  }
  return {mean, CovarianceMatrix::from_matrix(raw, tol)};
}

std::string serialize_state_file(const GaussianState& state) {
  json doc;
  doc["convention"] = {{"hbar", 1}, {"ordering", kOrdering}, {"vacuum_variance", 0.5}};
  json cov = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < 4; ++j) row.push_back(state.cov(i, j));
    cov.push_back(row);
  }
  doc["cov"] = cov;
  doc["mean"] = state.mean;
  return doc.dump(2) + "\n";
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace gaussep
