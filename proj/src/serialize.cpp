// Copyright 2026 The randassign Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "randassign/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"
#include "randassign/error.hpp"

namespace randassign {
namespace {

using Json = nlohmann::ordered_json;

Json Num(const Rational& r) {
  return Json{{"num", r.NumeratorString()}, {"den", r.DenominatorString()}};
}

Rational RationalFrom(const Json& j) {
  auto part = [](const Json& v) -> std::string {
    if (v.is_number_integer()) return v.dump();
    if (v.is_string()) return v.get<std::string>();
    throw Error(ErrorCode::kMalformedInput, "rational part must be an integer or string");
  };
  if (j.is_object()) {
    if (!j.contains("num")) throw Error(ErrorCode::kMalformedInput, "rational missing \"num\"");
    return Rational::FromStrings(part(j.at("num")), j.contains("den") ? part(j.at("den")) : "1");
  }
  if (j.is_string()) return Rational::Parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational::Parse(j.dump());
  throw Error(ErrorCode::kMalformedInput, "expected a rational, got " + j.dump());
}

Json Row(std::span<const Rational> row) {
  Json out = Json::array();
  for (const Rational& r : row) out.push_back(Num(r));
  return out;
}

std::vector<Rational> RowFrom(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kMalformedInput, "expected an array of rationals");
  std::vector<Rational> out;
  for (const Json& v : j) out.push_back(RationalFrom(v));
  return out;
}

Json Parse(std::string_view text, ErrorCode code) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(code, std::string("invalid JSON: ") + e.what());
  }
}

Json PrefJson(const WeakOrder& pref, const Profile& p) {
  Json classes = Json::array();
  for (const auto& cls : pref.classes()) {
    Json c = Json::array();
    for (ObjectId o : cls) c.push_back(p.object_label(o));
    classes.push_back(std::move(c));
  }
  return classes;
}

WeakOrder PrefFrom(const Json& j, const Profile& p) {
  if (!j.is_array()) throw Error(ErrorCode::kMalformedInput, "preference must be an array of classes");
  std::vector<std::vector<ObjectId>> classes;
  for (const Json& cls : j) {
    if (!cls.is_array()) throw Error(ErrorCode::kMalformedInput, "class must be an array");
    classes.emplace_back();
    for (const Json& o : cls) {
      auto id = o.is_string() ? p.FindObject(o.get<std::string>()) : std::nullopt;
      if (!id) throw Error(ErrorCode::kMalformedInput, "unknown object " + o.dump());
      classes.back().push_back(*id);
    }
  }
  return WeakOrder(std::move(classes), p.size());
}

Json ProfileJson(const Profile& p) {
  Json agents = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i)
    agents.push_back({{"name", p.agent_label(AgentId{i})}, {"classes", PrefJson(p.pref(AgentId{i}), p)}});
  return Json{{"agents", std::move(agents)}};
}

Profile ProfileFrom(const Json& j) {
  auto bad = [](const std::string& m) { return Error(ErrorCode::kMalformedProfile, m); };
  if (!j.is_object() || !j.contains("agents") || !j.at("agents").is_array())
    throw bad("profile JSON needs an \"agents\" array");
  // rebuilt as text so both formats share one set of checks
  std::string text;
  for (const Json& a : j.at("agents")) {
    if (!a.is_object() || !a.contains("name") || !a.at("name").is_string() ||
        !a.contains("classes") || !a.at("classes").is_array())
      throw bad("agent entries need \"name\" and \"classes\"");
    auto label_ok = [](const std::string& s) {
      return !s.empty() && s.find_first_of(":>~#\n") == std::string::npos &&
             std::none_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    };
    const std::string name = a.at("name").get<std::string>();
    if (!label_ok(name)) throw bad("bad agent name '" + name + "'");
    text += name + ":";
    bool first_class = true;
    for (const Json& cls : a.at("classes")) {
      if (!cls.is_array() || cls.empty()) throw bad("agent '" + name + "': classes must be non-empty arrays");
      text += first_class ? " " : " > ";
      first_class = false;
      bool first = true;
      for (const Json& o : cls) {
        if (!o.is_string() || !label_ok(o.get<std::string>()))
          throw bad("agent '" + name + "': bad object " + o.dump());
        text += (first ? "" : " ~ ") + o.get<std::string>();
        first = false;
      }
    }
    text += "\n";
  }
  return ParseProfile(text);
}

std::vector<std::vector<Rational>> MatrixFrom(const Json& j) {
  const Json& rows = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
  if (!rows.is_array()) throw Error(ErrorCode::kMalformedInput, "matrix must be an array of rows");
  std::vector<std::vector<Rational>> out;
  for (const Json& r : rows) out.push_back(RowFrom(r));
  return out;
}

Json MatrixJson(const Assignment& p, const Profile* labels) {
  Json out = Json::object();
  if (labels) {
    out["agents"] = labels->agent_labels();
    out["objects"] = labels->object_labels();
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) rows.push_back(Row(p.row(AgentId{i})));
  out["matrix"] = std::move(rows);
  return out;
}

Json CycleJson(const TradingCycle& c, const Profile& p) {
  Json steps = Json::array();
  for (const CycleStep& s : c.steps)
    steps.push_back({{"object", p.object_label(s.object)},
                     {"agent", p.agent_label(s.agent)},
                     {"strict", s.strict}});
  return Json{{"steps", std::move(steps)}, {"text", FormatTradingCycle(c, p)}};
}

TradingCycle CycleFrom(const Json& j, const Profile& p) {
  if (!j.is_object() || !j.contains("steps") || !j.at("steps").is_array())
    throw Error(ErrorCode::kMalformedInput, "cycle JSON needs \"steps\"");
  TradingCycle c;
  for (const Json& s : j.at("steps")) {
    auto o = p.FindObject(s.value("object", ""));
    auto a = p.FindAgent(s.value("agent", ""));
    if (!o || !a) throw Error(ErrorCode::kMalformedInput, "unknown label in cycle step " + s.dump());
    c.steps.push_back({*o, *a, s.value("strict", false)});
  }
  return c;
}

const char* RelationName(lp::Relation r) { return lp::RelationSymbol(r); }

lp::Relation RelationFrom(const std::string& s) {
  for (lp::Relation r : {lp::Relation::kEq, lp::Relation::kLe, lp::Relation::kGe,
                         lp::Relation::kLt, lp::Relation::kGt})
    if (s == lp::RelationSymbol(r)) return r;
  throw Error(ErrorCode::kMalformedInput, "unknown relation '" + s + "'");
}

Json ExprJson(const lp::LinearExpr& e, const lp::LinearSystem& sys) {
  Json terms = Json::array();
  for (const auto& [v, k] : e.terms())
    terms.push_back({{"var", sys.name(lp::VarId{v})}, {"coef", Num(k)}});
  return terms;
}

Json SystemJson(const lp::LinearSystem& sys) {
  Json vars = Json::array();
  for (std::size_t v = 0; v < sys.num_variables(); ++v)
    vars.push_back({{"name", sys.name(lp::VarId{v})},
                    {"domain", sys.domain(lp::VarId{v}) == lp::VarDomain::kFree ? "free" : "nonnegative"}});
  Json cons = Json::array();
  for (const lp::Constraint& c : sys.constraints())
    cons.push_back({{"terms", ExprJson(c.lhs, sys)},
                    {"relation", RelationName(c.relation)},
                    {"rhs", Num(c.rhs)},
                    {"label", c.label}});
  return Json{{"variables", std::move(vars)}, {"constraints", std::move(cons)}};
}

Json Multipliers(std::span<const Rational> y) { return Row(y); }

Json BoundJson(const BoundProof& b) {
  Json out{{"label", b.label},
           {"direction", b.minimize ? "minimize" : "maximize"},
           {"objective", ExprJson(b.objective, b.system)},
           {"feasible", b.feasible}};
  if (b.feasible) {
    out["value"] = Num(b.value);
    out["dual"] = Multipliers(b.dual);
  } else if (b.infeasibility) {
    out["certificate"] = Multipliers(b.infeasibility->multipliers);
  }
  out["system"] = SystemJson(b.system);
  return out;
}

std::string EntryText(const Profile& p, Entry e) {
  return "C" + p.agent_label(e.agent) + p.object_label(e.object);
}

const char* KindName(RefutationNode::Kind k) {
  switch (k) {
    case RefutationNode::Kind::kInfeasible: return "infeasible";
    case RefutationNode::Kind::kCycle: return "cycle";
    case RefutationNode::Kind::kSplit: return "split";
  }
  return "unknown";
}

std::string Pad(const std::string& s, std::size_t w) {
  return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
}

}  // namespace

std::string ProfileToJson(const Profile& profile) { return ProfileJson(profile).dump(2); }

Profile ProfileFromJson(std::string_view text) {
  return ProfileFrom(Parse(text, ErrorCode::kMalformedProfile));
}

Profile LoadProfile(std::string_view text) {
  auto first = std::find_if(text.begin(), text.end(),
                            [](unsigned char c) { return !std::isspace(c); });
  if (first != text.end() && *first == '{') return ProfileFromJson(text);
  return ParseProfile(text);
}

std::vector<std::vector<Rational>> ParseMatrix(std::string_view text) {
  auto first = std::find_if(text.begin(), text.end(),
                            [](unsigned char c) { return !std::isspace(c); });
  if (first != text.end() && (*first == '{' || *first == '['))
    return MatrixFrom(Parse(text, ErrorCode::kMalformedInput));
  std::vector<std::vector<Rational>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream tokens(line);
    std::vector<Rational> row;
    for (std::string tok; tokens >> tok;) row.push_back(Rational::Parse(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::kMalformedInput, "matrix is empty");
  return rows;
}

std::string FormatAssignment(const Assignment& p, const Profile* labels,
                             std::optional<int> decimals) {
  const std::size_t n = p.size();
  std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n));
  std::size_t width = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cells[i][j] = decimals ? p.at(i, j).FormatDecimal(*decimals) : p.at(i, j).ToString();
      width = std::max(width, cells[i][j].size());
    }
  std::size_t label_width = 0;
  if (labels) {
    for (const auto& l : labels->agent_labels()) label_width = std::max(label_width, l.size());
    for (const auto& l : labels->object_labels()) width = std::max(width, l.size());
  }
  std::ostringstream os;
  if (decimals) os << "# approximate: rounded to " << *decimals << " decimal places\n";
  if (labels) {
    os << std::string(label_width + 1, ' ');
    for (std::size_t j = 0; j < n; ++j) os << "  " << Pad(labels->object_label(ObjectId{j}), width);
    os << '\n';
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (labels) os << Pad(labels->agent_label(AgentId{i}), label_width) << ':';
    for (std::size_t j = 0; j < n; ++j) os << (labels || j ? "  " : "") << Pad(cells[i][j], width);
    os << '\n';
  }
  return os.str();
}

std::string AssignmentToJson(const Assignment& p, const Profile* labels) {
  return MatrixJson(p, labels).dump(2);
}

std::string CycleToJson(const TradingCycle& cycle, const Profile& profile) {
  return CycleJson(cycle, profile).dump(2);
}

TradingCycle CycleFromJson(std::string_view text, const Profile& profile) {
  return CycleFrom(Parse(text, ErrorCode::kMalformedInput), profile);
}

std::string DecompositionToJson(
    const std::vector<std::pair<DiscreteAssignment, Rational>>& parts,
    const Profile& profile) {
  Json out = Json::array();
  for (const auto& [m, w] : parts) {
    Json perm = Json::array();
    for (ObjectId o : m.objects()) perm.push_back(profile.object_label(o));
    out.push_back({{"permutation", std::move(perm)}, {"weight", Num(w)}});
  }
  return out.dump(2);
}

std::string LinearSystemToJson(const lp::LinearSystem& system) {
  return SystemJson(system).dump(2);
}

lp::LinearSystem LinearSystemFromJson(std::string_view text) {
  Json j = Parse(text, ErrorCode::kMalformedInput);
  try {
    lp::LinearSystem sys;
    for (const Json& v : j.at("variables"))
      sys.AddVariable(v.at("name").get<std::string>(),
                      v.value("domain", "nonnegative") == "free" ? lp::VarDomain::kFree
                                                                 : lp::VarDomain::kNonNegative);
    for (const Json& c : j.at("constraints")) {
      lp::LinearExpr e;
      for (const Json& t : c.at("terms")) {
        auto v = sys.FindVariable(t.at("var").get<std::string>());
        if (!v) throw Error(ErrorCode::kMalformedInput, "unknown variable " + t.at("var").dump());
        e.Add(*v, RationalFrom(t.at("coef")));
      }
      sys.AddConstraint(e, RelationFrom(c.at("relation").get<std::string>()),
                        RationalFrom(c.at("rhs")), c.value("label", ""));
    }
    return sys;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("bad linear system: ") + e.what());
  }
}

std::string EatingTraceToJson(const EatingTrace& trace, const Profile& profile) {
  Json out = Json::array();
  for (const EatingSegment& s : trace.segments) {
    Json eating = Json::object();
    for (std::size_t i = 0; i < s.eating.size(); ++i)
      eating[profile.agent_label(AgentId{i})] = profile.object_label(s.eating[i]);
    out.push_back({{"start", Num(s.start)}, {"end", Num(s.end)}, {"eating", std::move(eating)}});
  }
  return out.dump(2);
}

std::string EpsPhasesToJson(const std::vector<EpsPhase>& phases, const Profile& profile) {
  Json out = Json::array();
  for (const EpsPhase& ph : phases) {
    Json agents = Json::array(), objects = Json::array();
    for (AgentId a : ph.agents) agents.push_back(profile.agent_label(a));
    for (ObjectId o : ph.objects) objects.push_back(profile.object_label(o));
    out.push_back({{"start", Num(ph.start)},
                   {"end", Num(ph.end)},
                   {"agents", std::move(agents)},
                   {"objects", std::move(objects)}});
  }
  return out.dump(2);
}

std::string FormatWitness(const ManipulationWitness& w) {
  const Profile& p = w.profile;
  auto row = [](const std::vector<Rational>& r) {
    std::string s;
    for (std::size_t j = 0; j < r.size(); ++j) s += (j ? " " : "") + r[j].ToString();
    return s;
  };
  std::ostringstream os;
  os << "profile:\n" << FormatProfile(p);
  os << "agent: " << p.agent_label(w.agent) << '\n';
  os << "truthful: " << FormatWeakOrder(w.truthful, p) << '\n';
  os << "misreport: " << FormatWeakOrder(w.misreport, p) << '\n';
  os << "truthful row: " << row(w.truthful_row) << '\n';
  os << "manipulated row: " << row(w.manipulated_row) << '\n';
  os << "manipulated vs truthful: " << SdComparisonName(w.comparison) << '\n';
  return os.str();
}

std::string WitnessToJson(const ManipulationWitness& w) {
  Json out{{"profile", ProfileJson(w.profile)},
           {"agent", w.profile.agent_label(w.agent)},
           {"truthful", PrefJson(w.truthful, w.profile)},
           {"misreport", PrefJson(w.misreport, w.profile)},
           {"truthful_row", Row(w.truthful_row)},
           {"manipulated_row", Row(w.manipulated_row)},
           {"comparison", SdComparisonName(w.comparison)}};
  return out.dump(2);
}

ManipulationWitness WitnessFromJson(std::string_view text) {
  Json j = Parse(text, ErrorCode::kMalformedInput);
  if (!j.is_object() || !j.contains("profile"))
    throw Error(ErrorCode::kMalformedInput, "witness JSON needs a profile");
  ManipulationWitness w;
  w.profile = ProfileFrom(j.at("profile"));
  auto agent = w.profile.FindAgent(j.value("agent", ""));
  if (!agent) throw Error(ErrorCode::kMalformedInput, "unknown witness agent");
  w.agent = *agent;
  w.truthful = PrefFrom(j.value("truthful", Json()), w.profile);
  w.misreport = PrefFrom(j.value("misreport", Json()), w.profile);
  w.truthful_row = RowFrom(j.value("truthful_row", Json()));
  w.manipulated_row = RowFrom(j.value("manipulated_row", Json()));
  const std::string c = j.value("comparison", "");
  bool found = false;
  for (SdComparison s : {SdComparison::kEqual, SdComparison::kStrictlyDominates,
                         SdComparison::kStrictlyDominated, SdComparison::kIncomparable})
    if (c == SdComparisonName(s)) {
      w.comparison = s;
      found = true;
    }
  if (!found) throw Error(ErrorCode::kMalformedInput, "unknown comparison '" + c + "'");
  return w;
}

std::string TheoremToJson(const TheoremCertificate& cert) {
  const Profile& pd = cert.profile_double;
  Json step2 = Json::array();
  for (const Refutation& r : cert.zero_facts) {
    Json nodes = Json::array();
    for (const RefutationNode& node : r.nodes) {
      Json pos = Json::array(), zero = Json::array();
      for (Entry e : node.positive) pos.push_back(EntryText(pd, e));
      for (Entry e : node.zero) zero.push_back(EntryText(pd, e));
      Json jn{{"positive", std::move(pos)}, {"zero", std::move(zero)}, {"kind", KindName(node.kind)}};
      if (node.certificate) jn["certificate"] = Multipliers(node.certificate->multipliers);
      if (node.cycle) {
        jn["cycle"] = CycleJson(*node.cycle, pd);
        jn["supplied"] = node.supplied;
      }
      if (!node.witness.empty()) jn["witness"] = Row(node.witness);
      if (node.kind == RefutationNode::Kind::kSplit) {
        Json split = Json::array();
        for (Entry e : node.split) split.push_back(EntryText(pd, e));
        jn["split"] = std::move(split);
        jn["children"] = node.children;
      }
      nodes.push_back(std::move(jn));
    }
    step2.push_back({{"target", EntryText(pd, r.target) + " = 0"}, {"nodes", std::move(nodes)}});
  }
  Json cut_cases = Json::array();
  for (const BoundProof& b : cert.cut_cases) cut_cases.push_back(BoundJson(b));
  Json cases = Json::array();
  for (const CaseRefutation& c : cert.cases)
    cases.push_back({{"label", c.label},
                     {"certificate", Multipliers(c.certificate.multipliers)},
                     {"system", SystemJson(c.system)}});
  Json out{
      {"n", cert.n},
      {"verified", cert.verified},
      {"failures", cert.failures},
      {"profiles",
       {{"P", ProfileJson(cert.profile)},
        {"P'", ProfileJson(cert.profile_prime)},
        {"P''", ProfileJson(cert.profile_double)}}},
      {"step1",
       {{"ps(P)", MatrixJson(cert.ps_profile, nullptr)["matrix"]},
        {"ps(P')", MatrixJson(cert.ps_prime, nullptr)["matrix"]},
        {"matches", cert.ps_profile == cert.expected_ps_profile &&
                        cert.ps_prime == cert.expected_ps_prime}}},
      {"step2", std::move(step2)},
      {"step3",
       {{"disjuncts", std::move(cut_cases)},
        {"cut_bound", Num(cert.cut_bound)},
        {"b_bound", BoundJson(cert.b_bound)},
        {"sum_max", BoundJson(cert.sum_max)},
        {"sum_min", BoundJson(cert.sum_min)}}},
      {"step4", std::move(cases)},
      {"result", cert.verified ? "all cases infeasible" : "verification failed"}};
  return out.dump(2);
}

}  // namespace randassign
