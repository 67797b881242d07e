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

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "randassign/rational.hpp"

namespace randassign {

struct ObjectId {
  std::size_t index = 0;
  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;
};

struct AgentId {
  std::size_t index = 0;
  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

/// A complete preorder over objects 0..n-1 stored as ordered indifference
/// classes. Class 0 is the most preferred.
class WeakOrder {
 public:
  WeakOrder() = default;
  /// Throws kDuplicateObject for a repeated object and kMalformedProfile for
  /// empty classes, out-of-range or missing objects.
  WeakOrder(std::vector<std::vector<ObjectId>> classes, std::size_t num_objects);

  static WeakOrder Strict(std::span<const ObjectId> ranking);
  static WeakOrder Strict(std::initializer_list<std::size_t> ranking);
  static WeakOrder FromClasses(
      std::initializer_list<std::initializer_list<std::size_t>> classes);

  std::size_t num_objects() const { return class_of_.size(); }
  std::size_t num_classes() const { return classes_.size(); }
  const std::vector<std::vector<ObjectId>>& classes() const { return classes_; }
  std::size_t class_of(ObjectId o) const { return class_of_.at(o.index); }

  bool IsStrict() const { return classes_.size() == class_of_.size(); }
  bool StrictlyPrefers(ObjectId a, ObjectId b) const {
    return class_of(a) < class_of(b);
  }
  bool WeaklyPrefers(ObjectId a, ObjectId b) const {
    return class_of(a) <= class_of(b);
  }
  bool Indifferent(ObjectId a, ObjectId b) const {
    return class_of(a) == class_of(b);
  }

  /// Objects sorted best-first, ties broken by index.
  std::vector<ObjectId> Linearized() const;

  friend bool operator==(const WeakOrder& a, const WeakOrder& b) {
    return a.classes_ == b.classes_;
  }

 private:
  std::vector<std::vector<ObjectId>> classes_;
  std::vector<std::size_t> class_of_;
};

/// All objects weakly preferred to `o`, including `o` and its whole class.
std::vector<ObjectId> UpperContour(const WeakOrder& pref, ObjectId o);

/// Square instance: n agents, n objects, one weak order per agent.
class Profile {
 public:
  Profile() = default;
  Profile(std::vector<std::string> agent_labels,
          std::vector<std::string> object_labels, std::vector<WeakOrder> prefs);

  /// Labels "1".."n" for agents and "a","b",... for objects.
  static Profile WithDefaultLabels(std::vector<WeakOrder> prefs);

  std::size_t size() const { return prefs_.size(); }
  const WeakOrder& pref(AgentId i) const { return prefs_.at(i.index); }
  const std::vector<WeakOrder>& prefs() const { return prefs_; }
  const std::vector<std::string>& agent_labels() const { return agent_labels_; }
  const std::vector<std::string>& object_labels() const {
    return object_labels_;
  }
  const std::string& agent_label(AgentId i) const {
    return agent_labels_.at(i.index);
  }
  const std::string& object_label(ObjectId o) const {
    return object_labels_.at(o.index);
  }
  std::optional<ObjectId> FindObject(std::string_view label) const;
  std::optional<AgentId> FindAgent(std::string_view label) const;

  bool IsStrict() const;
  /// Copy with agent i's preference replaced.
  Profile WithPreference(AgentId i, WeakOrder pref) const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::vector<std::string> agent_labels_;
  std::vector<std::string> object_labels_;
  std::vector<WeakOrder> prefs_;
};

/// n x n doubly stochastic matrix of exact probabilities.
/// Row i is agent i's allocation, column j is object j.
class Assignment {
 public:
  Assignment() = default;

  /// Validates and throws kValidation naming the first offending index.
  static Assignment Validate(std::vector<std::vector<Rational>> matrix);
  static Assignment Identity(std::size_t n);

  std::size_t size() const { return n_; }
  const Rational& at(AgentId i, ObjectId o) const {
    return entries_[i.index * n_ + o.index];
  }
  const Rational& at(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  std::span<const Rational> row(AgentId i) const {
    return {entries_.data() + i.index * n_, n_};
  }
  std::vector<std::vector<Rational>> ToRows() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> entries_;
};

/// A perfect matching: object_of[i] is agent i's object.
class DiscreteAssignment {
 public:
  DiscreteAssignment() = default;
  /// Throws kValidation unless `object_of` is a permutation.
  explicit DiscreteAssignment(std::vector<ObjectId> object_of);

  std::size_t size() const { return object_of_.size(); }
  ObjectId object_of(AgentId i) const { return object_of_.at(i.index); }
  const std::vector<ObjectId>& objects() const { return object_of_; }
  Assignment ToAssignment() const;

  friend bool operator==(const DiscreteAssignment&,
                         const DiscreteAssignment&) = default;
  friend auto operator<=>(const DiscreteAssignment& a,
                          const DiscreteAssignment& b) {
    return a.object_of_ <=> b.object_of_;
  }

 private:
  std::vector<ObjectId> object_of_;
};

enum class ValidationIssue {
  kNotSquare,
  kNegativeEntry,
  kEntryAboveOne,
  kRowSum,
  kColumnSum,
};

/// Like Assignment::Validate but reports the issue without throwing.
struct ValidationReport {
  bool ok = true;
  ValidationIssue issue = ValidationIssue::kNotSquare;
  std::size_t row = 0;
  std::size_t column = 0;
  std::string message;
};
ValidationReport CheckAssignment(
    const std::vector<std::vector<Rational>>& matrix);

// Profile text format: one agent per line, "label: a ~ b > c".
// Blank lines and '#' comments are ignored.
Profile ParseProfile(std::string_view text);
std::string FormatProfile(const Profile& profile);
std::string FormatWeakOrder(const WeakOrder& pref, const Profile& profile);

inline constexpr std::size_t kDefaultWeakOrderCap = 5;
inline constexpr std::size_t kDefaultFactorialCap = 8;

/// Every ordered set partition of `num_objects` objects exactly once. The
/// first class is chosen by increasing bitmask, recursively.
std::vector<WeakOrder> EnumerateWeakOrders(std::size_t num_objects,
                                           std::size_t cap = kDefaultWeakOrderCap);
/// All strict orders in lexicographic order of the ranking.
std::vector<WeakOrder> EnumerateStrictOrders(
    std::size_t num_objects, std::size_t cap = kDefaultFactorialCap);
/// All permutations of 0..n-1 in lexicographic order.
std::vector<std::vector<std::size_t>> EnumeratePermutations(
    std::size_t n, std::size_t cap = kDefaultFactorialCap);

/// Grows `base` to `n` agents: each new agent ranks its own new object first,
/// then the other new objects, then the base objects (all strictly, by
/// index). Base agents keep their order with new objects appended last.
Profile PadProfile(const Profile& base, std::size_t n);

/// Natural ordering for labels: digit runs compare numerically.
bool NaturalLess(std::string_view a, std::string_view b);

}  // namespace randassign
