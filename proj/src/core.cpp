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

#include "randassign/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "randassign/error.hpp"

namespace randassign {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string LineError(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

bool AllSingleLowercase(const std::vector<std::string>& labels) {
  return std::all_of(labels.begin(), labels.end(), [](const std::string& l) {
    return l.size() == 1 && l[0] >= 'a' && l[0] <= 'z';
  });
}

bool AllIntegers(const std::vector<std::string>& labels) {
  return std::all_of(labels.begin(), labels.end(), [](const std::string& l) {
    return !l.empty() && l.size() < 9 &&
           std::all_of(l.begin(), l.end(), [](char c) {
             return std::isdigit(static_cast<unsigned char>(c));
           });
  });
}

std::vector<std::string> FreshLabels(const std::vector<std::string>& used,
                                     std::size_t count, bool letters,
                                     const std::string& prefix) {
  std::set<std::string> taken(used.begin(), used.end());
  std::vector<std::string> fresh;
  if (letters) {
    for (char c = 'a'; c <= 'z' && fresh.size() < count; ++c) {
      std::string l(1, c);
      if (!taken.count(l)) fresh.push_back(l);
    }
  }
  for (std::size_t k = 1; fresh.size() < count; ++k) {
    std::string l = prefix + std::to_string(k);
    if (!taken.count(l)) {
      fresh.push_back(l);
      taken.insert(l);
    }
  }
  return fresh;
}

}  // namespace

bool NaturalLess(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)); };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && digit(a[ie])) ++ie;
      while (je < b.size() && digit(b[je])) ++je;
      std::string_view da = a.substr(i, ie - i), db = b.substr(j, je - j);
      while (da.size() > 1 && da.front() == '0') da.remove_prefix(1);
      while (db.size() > 1 && db.front() == '0') db.remove_prefix(1);
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

WeakOrder::WeakOrder(std::vector<std::vector<ObjectId>> classes,
                     std::size_t num_objects)
    : classes_(std::move(classes)), class_of_(num_objects, num_objects) {
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    if (classes_[c].empty()) {
      throw Error(ErrorCode::kMalformedProfile, "empty indifference class");
    }
    for (ObjectId o : classes_[c]) {
      if (o.index >= num_objects) {
        throw Error(ErrorCode::kMalformedProfile,
                    "object index " + std::to_string(o.index) + " out of range");
      }
      if (class_of_[o.index] != num_objects) {
        throw Error(ErrorCode::kDuplicateObject,
                    "object index " + std::to_string(o.index) + " repeated");
      }
      class_of_[o.index] = c;
    }
    std::sort(classes_[c].begin(), classes_[c].end());
  }
  for (std::size_t o = 0; o < num_objects; ++o) {
    if (class_of_[o] == num_objects) {
      throw Error(ErrorCode::kMalformedProfile,
                  "object index " + std::to_string(o) + " missing");
    }
  }
}

WeakOrder WeakOrder::Strict(std::span<const ObjectId> ranking) {
  std::vector<std::vector<ObjectId>> classes;
  for (ObjectId o : ranking) classes.push_back({o});
  return WeakOrder(std::move(classes), ranking.size());
}

WeakOrder WeakOrder::Strict(std::initializer_list<std::size_t> ranking) {
  std::vector<ObjectId> ids;
  for (std::size_t o : ranking) ids.push_back(ObjectId{o});
  return Strict(ids);
}

WeakOrder WeakOrder::FromClasses(
    std::initializer_list<std::initializer_list<std::size_t>> classes) {
  std::vector<std::vector<ObjectId>> out;
  std::size_t total = 0;
  for (const auto& c : classes) {
    out.emplace_back();
    for (std::size_t o : c) out.back().push_back(ObjectId{o});
    total += c.size();
  }
  return WeakOrder(std::move(out), total);
}

std::vector<ObjectId> WeakOrder::Linearized() const {
  std::vector<ObjectId> out;
  for (const auto& c : classes_) out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::vector<ObjectId> UpperContour(const WeakOrder& pref, ObjectId o) {
  std::vector<ObjectId> out;
  const std::size_t limit = pref.class_of(o);
  for (std::size_t c = 0; c <= limit; ++c) {
    const auto& cls = pref.classes()[c];
    out.insert(out.end(), cls.begin(), cls.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Profile::Profile(std::vector<std::string> agent_labels,
                 std::vector<std::string> object_labels,
                 std::vector<WeakOrder> prefs)
    : agent_labels_(std::move(agent_labels)),
      object_labels_(std::move(object_labels)),
      prefs_(std::move(prefs)) {
  const std::size_t n = prefs_.size();
  if (agent_labels_.size() != n || object_labels_.size() != n) {
    throw Error(ErrorCode::kShape,
                "profile needs as many objects as agents (" +
                    std::to_string(agent_labels_.size()) + " agents, " +
                    std::to_string(object_labels_.size()) + " objects)");
  }
  for (const WeakOrder& w : prefs_) {
    if (w.num_objects() != n) {
      throw Error(ErrorCode::kShape, "preference ranges over " +
                                         std::to_string(w.num_objects()) +
                                         " objects, expected " +
                                         std::to_string(n));
    }
  }
}

Profile Profile::WithDefaultLabels(std::vector<WeakOrder> prefs) {
  std::vector<std::string> agents, objects;
  for (std::size_t i = 0; i < prefs.size(); ++i) {
    agents.push_back(std::to_string(i + 1));
  }
  objects = FreshLabels({}, prefs.size(), true, "o");
  return Profile(std::move(agents), std::move(objects), std::move(prefs));
}

std::optional<ObjectId> Profile::FindObject(std::string_view label) const {
  for (std::size_t j = 0; j < object_labels_.size(); ++j) {
    if (object_labels_[j] == label) return ObjectId{j};
  }
  return std::nullopt;
}

std::optional<AgentId> Profile::FindAgent(std::string_view label) const {
  for (std::size_t i = 0; i < agent_labels_.size(); ++i) {
    if (agent_labels_[i] == label) return AgentId{i};
  }
  return std::nullopt;
}

bool Profile::IsStrict() const {
  return std::all_of(prefs_.begin(), prefs_.end(),
                     [](const WeakOrder& w) { return w.IsStrict(); });
}

Profile Profile::WithPreference(AgentId i, WeakOrder pref) const {
  Profile copy = *this;
  if (pref.num_objects() != size()) {
    throw Error(ErrorCode::kShape, "replacement preference has wrong size");
  }
  copy.prefs_.at(i.index) = std::move(pref);
  return copy;
}

ValidationReport CheckAssignment(
    const std::vector<std::vector<Rational>>& matrix) {
  ValidationReport report;
  const std::size_t n = matrix.size();
  auto fail = [&](ValidationIssue issue, std::size_t r, std::size_t c,
                  std::string msg) {
    report.ok = false;
    report.issue = issue;
    report.row = r;
    report.column = c;
    report.message = std::move(msg);
    return report;
  };
  if (n == 0) return fail(ValidationIssue::kNotSquare, 0, 0, "empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      return fail(ValidationIssue::kNotSquare, i, 0,
                  "row " + std::to_string(i + 1) + " has " +
                      std::to_string(matrix[i].size()) + " entries, expected " +
                      std::to_string(n));
    }
  }
  const Rational one(1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = matrix[i][j];
      if (v.Sign() < 0) {
        return fail(ValidationIssue::kNegativeEntry, i, j,
                    "negative entry at (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + "): " + v.ToString());
      }
      if (v > one) {
        return fail(ValidationIssue::kEntryAboveOne, i, j,
                    "entry above 1 at (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + "): " + v.ToString());
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rational sum;
    for (std::size_t j = 0; j < n; ++j) sum += matrix[i][j];
    if (sum != one) {
      return fail(ValidationIssue::kRowSum, i, 0,
                  "row " + std::to_string(i + 1) + " sums to " +
                      sum.ToString() + ", expected 1");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational sum;
    for (std::size_t i = 0; i < n; ++i) sum += matrix[i][j];
    if (sum != one) {
      return fail(ValidationIssue::kColumnSum, 0, j,
                  "column " + std::to_string(j + 1) + " sums to " +
                      sum.ToString() + ", expected 1");
    }
  }
  return report;
}

Assignment Assignment::Validate(std::vector<std::vector<Rational>> matrix) {
  ValidationReport report = CheckAssignment(matrix);
  if (!report.ok) throw Error(ErrorCode::kValidation, report.message);
  Assignment a;
  a.n_ = matrix.size();
  a.entries_.reserve(a.n_ * a.n_);
  for (auto& row : matrix) {
    for (auto& v : row) a.entries_.push_back(std::move(v));
  }
  return a;
}

Assignment Assignment::Identity(std::size_t n) {
  std::vector<ObjectId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = ObjectId{i};
  return DiscreteAssignment(std::move(ids)).ToAssignment();
}

std::vector<std::vector<Rational>> Assignment::ToRows() const {
  std::vector<std::vector<Rational>> rows(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    rows[i].assign(entries_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
  }
  return rows;
}

DiscreteAssignment::DiscreteAssignment(std::vector<ObjectId> object_of)
    : object_of_(std::move(object_of)) {
  std::vector<bool> seen(object_of_.size(), false);
  for (ObjectId o : object_of_) {
    if (o.index >= object_of_.size() || seen[o.index]) {
      throw Error(ErrorCode::kValidation, "not a permutation");
    }
    seen[o.index] = true;
  }
}

Assignment DiscreteAssignment::ToAssignment() const {
  const std::size_t n = object_of_.size();
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) rows[i][object_of_[i].index] = 1;
  return Assignment::Validate(std::move(rows));
}

Profile ParseProfile(std::string_view text) {
  struct Line {
    std::size_t number;
    std::string agent;
    std::vector<std::vector<std::string>> classes;
  };
  std::vector<Line> lines;
  std::size_t number = 0;
  for (std::string_view raw : Split(text, '\n')) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    std::string_view line = Trim(raw);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::kMalformedProfile,
                  LineError(number, "expected 'agent: preference'"));
    }
    Line parsed{number, std::string(Trim(line.substr(0, colon))), {}};
    if (parsed.agent.empty()) {
      throw Error(ErrorCode::kMalformedProfile,
                  LineError(number, "missing agent label"));
    }
    std::set<std::string> seen;
    for (std::string_view cls : Split(line.substr(colon + 1), '>')) {
      parsed.classes.emplace_back();
      for (std::string_view token : Split(cls, '~')) {
        token = Trim(token);
        if (token.empty() ||
            std::any_of(token.begin(), token.end(), [](char c) {
              return std::isspace(static_cast<unsigned char>(c));
            })) {
          throw Error(ErrorCode::kMalformedProfile,
                      LineError(number, "bad object token '" +
                                            std::string(token) + "'"));
        }
        if (!seen.insert(std::string(token)).second) {
          throw Error(ErrorCode::kDuplicateObject,
                      LineError(number, "object '" + std::string(token) +
                                            "' listed twice"));
        }
        parsed.classes.back().emplace_back(token);
      }
    }
    for (const Line& prev : lines) {
      if (prev.agent == parsed.agent) {
        throw Error(ErrorCode::kMalformedProfile,
                    LineError(number, "agent '" + parsed.agent +
                                          "' already defined"));
      }
    }
    lines.push_back(std::move(parsed));
  }
  if (lines.empty()) {
    throw Error(ErrorCode::kMalformedProfile, "profile has no agents");
  }

  std::set<std::string> all;
  for (const Line& l : lines) {
    for (const auto& c : l.classes) all.insert(c.begin(), c.end());
  }
  std::vector<std::string> objects(all.begin(), all.end());
  std::sort(objects.begin(), objects.end(),
            [](const std::string& a, const std::string& b) {
              return NaturalLess(a, b);
            });
  if (objects.size() != lines.size()) {
    throw Error(ErrorCode::kShape,
                std::to_string(lines.size()) + " agents but " +
                    std::to_string(objects.size()) + " distinct objects");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < objects.size(); ++j) index[objects[j]] = j;

  std::vector<std::string> agents;
  std::vector<WeakOrder> prefs;
  for (const Line& l : lines) {
    std::size_t count = 0;
    std::vector<std::vector<ObjectId>> classes;
    for (const auto& c : l.classes) {
      classes.emplace_back();
      for (const auto& label : c) classes.back().push_back({index.at(label)});
      count += c.size();
    }
    if (count != objects.size()) {
      std::set<std::string> present;
      for (const auto& c : l.classes) present.insert(c.begin(), c.end());
      std::string missing;
      for (const auto& o : objects) {
        if (!present.count(o)) missing += (missing.empty() ? "" : ", ") + o;
      }
      throw Error(ErrorCode::kMalformedProfile,
                  LineError(l.number, "missing object(s): " + missing));
    }
    agents.push_back(l.agent);
    prefs.emplace_back(std::move(classes), objects.size());
  }
  return Profile(std::move(agents), std::move(objects), std::move(prefs));
}

std::string FormatWeakOrder(const WeakOrder& pref, const Profile& profile) {
  std::string out;
  for (std::size_t c = 0; c < pref.num_classes(); ++c) {
    if (c > 0) out += " > ";
    const auto& cls = pref.classes()[c];
    for (std::size_t k = 0; k < cls.size(); ++k) {
      if (k > 0) out += " ~ ";
      out += profile.object_label(cls[k]);
    }
  }
  return out;
}

std::string FormatProfile(const Profile& profile) {
  std::string out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out += profile.agent_label(AgentId{i}) + ": " +
           FormatWeakOrder(profile.pref(AgentId{i}), profile) + "\n";
  }
  return out;
}

namespace {

void EnumerateRec(std::vector<std::size_t>& remaining,
                  std::vector<std::vector<ObjectId>>& prefix,
                  std::size_t num_objects, std::vector<WeakOrder>& out) {
  if (remaining.empty()) {
    out.emplace_back(prefix, num_objects);
    return;
  }
  const std::size_t m = remaining.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<ObjectId> cls;
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < m; ++k) {
      if (mask & (std::size_t{1} << k)) {
        cls.push_back({remaining[k]});
      } else {
        rest.push_back(remaining[k]);
      }
    }
    prefix.push_back(std::move(cls));
    EnumerateRec(rest, prefix, num_objects, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<WeakOrder> EnumerateWeakOrders(std::size_t num_objects,
                                           std::size_t cap) {
  if (num_objects < 1 || num_objects > cap) {
    throw Error(ErrorCode::kSize, "weak-order enumeration supports 1.." +
                                      std::to_string(cap) + " objects, got " +
                                      std::to_string(num_objects));
  }
  std::vector<std::size_t> all(num_objects);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<ObjectId>> prefix;
  std::vector<WeakOrder> out;
  EnumerateRec(all, prefix, num_objects, out);
  return out;
}

std::vector<std::vector<std::size_t>> EnumeratePermutations(std::size_t n,
                                                            std::size_t cap) {
  if (n > cap) {
    throw Error(ErrorCode::kSize, "permutation enumeration capped at n=" +
                                      std::to_string(cap) + ", got " +
                                      std::to_string(n));
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<WeakOrder> EnumerateStrictOrders(std::size_t num_objects,
                                             std::size_t cap) {
  std::vector<WeakOrder> out;
  for (const auto& perm : EnumeratePermutations(num_objects, cap)) {
    std::vector<ObjectId> ids;
    for (std::size_t o : perm) ids.push_back({o});
    out.push_back(WeakOrder::Strict(ids));
  }
  return out;
}

Profile PadProfile(const Profile& base, std::size_t n) {
  const std::size_t m = base.size();
  if (n < m) {
    throw Error(ErrorCode::kSize, "cannot pad a size-" + std::to_string(m) +
                                      " profile down to " + std::to_string(n));
  }
  if (n == m) return base;
  const std::size_t extra = n - m;

  std::vector<std::string> objects = base.object_labels();
  auto new_objects = FreshLabels(objects, extra,
                                 AllSingleLowercase(objects), "o");
  objects.insert(objects.end(), new_objects.begin(), new_objects.end());

  std::vector<std::string> agents = base.agent_labels();
  if (AllIntegers(agents)) {
    long next = 0;
    for (const auto& a : agents) next = std::max(next, std::stol(a));
    for (std::size_t k = 0; k < extra; ++k) {
      agents.push_back(std::to_string(next + 1 + static_cast<long>(k)));
    }
  } else {
    auto fresh = FreshLabels(agents, extra, false, "agent");
    agents.insert(agents.end(), fresh.begin(), fresh.end());
  }

  std::vector<WeakOrder> prefs;
  for (std::size_t i = 0; i < m; ++i) {
    auto classes = base.pref(AgentId{i}).classes();
    for (std::size_t k = 0; k < extra; ++k) classes.push_back({{m + k}});
    prefs.emplace_back(std::move(classes), n);
  }
  for (std::size_t k = 0; k < extra; ++k) {
    std::vector<ObjectId> ranking{{m + k}};
    for (std::size_t other = 0; other < extra; ++other) {
      if (other != k) ranking.push_back({m + other});
    }
    for (std::size_t j = 0; j < m; ++j) ranking.push_back({j});
    prefs.push_back(WeakOrder::Strict(ranking));
  }
  return Profile(std::move(agents), std::move(objects), std::move(prefs));
}

}  // namespace randassign
