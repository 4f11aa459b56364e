#include <cmath>
#include <limits>

#include "negtype/cli.hpp"
#include "negtype/error.hpp"

namespace negtype::cli {

using nlohmann::json;

namespace {

std::string_view kind_name(InputKind k) {
  switch (k) {
    case InputKind::GraphFile: return "graph";
    case InputKind::MatrixFile: return "matrix";
    case InputKind::Generator: return "gen";
  }
  return "gen";
}

InputKind kind_from_name(const std::string& s) {
  if (s == "graph") return InputKind::GraphFile;
  if (s == "matrix") return InputKind::MatrixFile;
  if (s == "gen") return InputKind::Generator;
  throw Error(ErrorKind::ParseError, "unknown input kind '" + s + "'");
}

// JSON has no infinities; the only non-finite value we produce is the
// -inf largest eigenvalue of a one-point space.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or(const json& j, double fallback) {
  return j.is_null() ? fallback : j.get<double>();
}

Trigger trigger_from_name(const std::string& s) {
  if (s == "det_zero") return Trigger::DetZero;
  if (s == "inner_zero") return Trigger::InnerZero;
  if (s == "not_applicable") return Trigger::NotApplicable;
  throw Error(ErrorKind::ParseError, "unknown trigger '" + s + "'");
}

json side_json(const std::vector<WeightedPoint>& side) {
  json arr = json::array();
  for (const auto& w : side) arr.push_back({{"index", w.index}, {"weight", w.weight}});
  return arr;
}

std::vector<WeightedPoint> side_from_json(const json& arr) {
  std::vector<WeightedPoint> out;
  for (const auto& e : arr) out.push_back({e.at("index").get<std::size_t>(), e.at("weight").get<double>()});
  return out;
}

}  // namespace

json to_json(const RunReport& r) {
  const auto& res = r.result;
  json j;
  j["input"] = {{"kind", kind_name(r.input.kind)},
                {"source", r.input.source},
                {"n", r.points},
                {"scale", r.scale},
                {"normalized", r.normalized}};
  j["config"] = {{"p_max", r.config.p_max},
                 {"grid_step", r.config.grid_step},
                 {"tol_p", r.config.tol_p},
                 {"tol_eig", r.config.tol_eig},
                 {"tol_det", r.config.tol_det}};
  j["status"] = to_string(res.status);
  if (res.finite()) j["p"] = res.p;
  j["trigger"] = to_string(res.trigger);
  j["bracket"] = json::array({res.p_lo, res.p_hi});

  json diag = {{"det", number(res.det)},
               {"bordered_det", number(res.bordered_det)},
               {"lambda_max", number(res.lambda_max)},
               {"grid_step", res.grid_step},
               {"rescans", res.rescans}};
  if (r.certificate) {
    j["alpha"] = r.certificate->alpha;
    j["simplex"] = {{"a_side", side_json(r.certificate->simplex.a_side)},
                    {"b_side", side_json(r.certificate->simplex.b_side)}};
    diag["form_value"] = r.certificate->form_value;
    diag["roundness_gap"] = r.certificate->roundness_gap;
  } else {
    j["alpha"] = nullptr;
    j["simplex"] = nullptr;
  }
  j["diagnostics"] = std::move(diag);
  j["wall_ms"] = r.wall_ms;
  return j;
}

RunReport report_from_json(const json& j) {
  RunReport r;
  const auto& in = j.at("input");
  r.input.kind = kind_from_name(in.at("kind").get<std::string>());
  r.input.source = in.at("source").get<std::string>();
  r.points = in.at("n").get<std::size_t>();
  r.scale = in.at("scale").get<double>();
  r.normalized = in.at("normalized").get<bool>();
  r.input.normalize = r.normalized;

  const auto& cfg = j.at("config");
  r.config.p_max = cfg.at("p_max").get<double>();
  r.config.grid_step = cfg.at("grid_step").get<double>();
  r.config.tol_p = cfg.at("tol_p").get<double>();
  r.config.tol_eig = cfg.at("tol_eig").get<double>();
  r.config.tol_det = cfg.at("tol_det").get<double>();

  auto& res = r.result;
  const auto status = j.at("status").get<std::string>();
  if (status == "finite") {
    res.status = PntStatus::Finite;
    res.p = j.at("p").get<double>();
  } else if (status == "infinite_beyond") {
    res.status = PntStatus::InfiniteBeyond;
    res.p = r.config.p_max;
  } else {
    throw Error(ErrorKind::ParseError, "unknown status '" + status + "'");
  }
  res.trigger = trigger_from_name(j.at("trigger").get<std::string>());
  res.p_lo = j.at("bracket").at(0).get<double>();
  res.p_hi = j.at("bracket").at(1).get<double>();

  const auto& diag = j.at("diagnostics");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  res.det = number_or(diag.at("det"), kNegInf);
  res.bordered_det = number_or(diag.at("bordered_det"), kNegInf);
  res.lambda_max = number_or(diag.at("lambda_max"), kNegInf);
  res.grid_step = diag.at("grid_step").get<double>();
  res.rescans = diag.at("rescans").get<int>();

  if (!j.at("alpha").is_null()) {
    ExtremalCertificate c;
    c.alpha = j.at("alpha").get<std::vector<double>>();
    c.simplex.a_side = side_from_json(j.at("simplex").at("a_side"));
    c.simplex.b_side = side_from_json(j.at("simplex").at("b_side"));
    c.form_value = diag.at("form_value").get<double>();
    c.roundness_gap = diag.at("roundness_gap").get<double>();
    r.certificate = std::move(c);
  }
  r.wall_ms = j.at("wall_ms").get<double>();
  return r;
}

}  // namespace negtype::cli
