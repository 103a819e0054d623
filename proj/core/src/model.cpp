#include "tierselect/model.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "number_format.hpp"

namespace tierselect {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view s) noexcept {
  for (const auto& [e, name] : table) {
    if (name == s) return e;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table,
                         E e) noexcept {
  for (const auto& [v, name] : table) {
    if (v == e) return name;
  }
  return "?";
}

constexpr std::array<std::pair<Direction, std::string_view>, 2> kDirections{{
    {Direction::HigherBetter, "higher_better"},
    {Direction::LowerBetter, "lower_better"},
}};

constexpr std::array<std::pair<MissingMetricPolicy, std::string_view>, 2> kPolicies{{
    {MissingMetricPolicy::Strict, "strict"},
    {MissingMetricPolicy::Lenient, "lenient"},
}};

constexpr std::array<std::pair<Constraint, std::string_view>, 5> kConstraints{{
    {Constraint::Latency, "latency"},
    {Constraint::Success, "success"},
    {Constraint::Quality, "quality"},
    {Constraint::Cost, "cost"},
    {Constraint::Regulatory, "regulatory"},
}};

constexpr std::array<std::pair<ViolationKind, std::string_view>, 3> kKinds{{
    {ViolationKind::Exceeded, "exceeded"},
    {ViolationKind::Unverifiable, "unverifiable"},
    {ViolationKind::Prohibited, "prohibited"},
}};

constexpr std::array<std::pair<BoundsProvenance, std::string_view>, 3> kProvenance{{
    {BoundsProvenance::Declared, "declared"},
    {BoundsProvenance::DataDerived, "data_derived"},
    {BoundsProvenance::Degenerate, "degenerate"},
}};

}  // namespace

std::string_view to_string(Direction d) noexcept { return name_of(kDirections, d); }
std::optional<Direction> direction_from_string(std::string_view s) noexcept {
  return lookup(kDirections, s);
}

std::string_view to_string(MissingMetricPolicy p) noexcept { return name_of(kPolicies, p); }
std::optional<MissingMetricPolicy> policy_from_string(std::string_view s) noexcept {
  return lookup(kPolicies, s);
}

std::string_view to_string(Constraint c) noexcept { return name_of(kConstraints, c); }
std::optional<Constraint> constraint_from_string(std::string_view s) noexcept {
  return lookup(kConstraints, s);
}

std::string_view to_string(ViolationKind k) noexcept { return name_of(kKinds, k); }
std::optional<ViolationKind> violation_kind_from_string(std::string_view s) noexcept {
  return lookup(kKinds, s);
}

std::string_view to_string(BoundsProvenance p) noexcept { return name_of(kProvenance, p); }
std::optional<BoundsProvenance> provenance_from_string(std::string_view s) noexcept {
  return lookup(kProvenance, s);
}

bool TierProfile::reports(std::string_view metric_id) const {
  return values.find(std::string(metric_id)) != values.end();
}

std::optional<double> TierProfile::value(std::string_view metric_id) const {
  auto it = values.find(std::string(metric_id));
  if (it == values.end()) return std::nullopt;
  return it->second;
}

const MetricDef* Scenario::find_metric(std::string_view id) const {
  auto it = std::find_if(metrics.begin(), metrics.end(), [&](const MetricDef& m) { return m.id == id; });
  return it == metrics.end() ? nullptr : &*it;
}

const TierProfile* Scenario::find_tier(std::string_view id) const {
  auto it = std::find_if(tiers.begin(), tiers.end(), [&](const TierProfile& t) { return t.id == id; });
  return it == tiers.end() ? nullptr : &*it;
}

std::string Violation::describe() const {
  std::string out(to_string(constraint));
  switch (kind) {
    case ViolationKind::Prohibited:
      return out;
    case ViolationKind::Unverifiable:
      return out + " unverifiable";
    case ViolationKind::Exceeded:
      break;
  }
  const bool upper = constraint == Constraint::Latency || constraint == Constraint::Cost;
  if (observed && threshold) {
    out += ' ';
    out += detail::format_number(*observed);
    out += upper ? " > " : " < ";
    out += detail::format_number(*threshold);
  }
  return out;
}

double EffectiveUtility::value() const {
  if (!value_) throw std::logic_error("effective utility of an infeasible tier has no value");
  return *value_;
}

std::partial_ordering operator<=>(const EffectiveUtility& a, const EffectiveUtility& b) noexcept {
  if (a.is_infeasible() || b.is_infeasible()) {
    return static_cast<int>(!a.is_infeasible()) <=> static_cast<int>(!b.is_infeasible());
  }
  return *a.value_ <=> *b.value_;
}

const TierReport* EvaluationResult::find(std::string_view tier_id) const {
  auto it = std::find_if(per_tier.begin(), per_tier.end(),
                         [&](const TierReport& r) { return r.tier_id == tier_id; });
  return it == per_tier.end() ? nullptr : &*it;
}

}  // namespace tierselect
