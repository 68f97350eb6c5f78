#include "mvinfo/measure_set.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "mvinfo/measures.hpp"
#include "mvinfo/pid.hpp"

namespace mvinfo {

namespace {

bool pid_supported(std::size_t n_sources) {
  return n_sources == 2 || n_sources == 3;
}

}  // namespace

MeasureSet MeasureSet::parse(const std::vector<std::string>& names,
                             std::size_t n_sources) {
  if (n_sources == 0)
    throw InvalidSplit("measure evaluation needs at least one source");
  if (names.empty()) throw UnknownMeasure("no measures requested");
  if (names.size() > 1 &&
      std::find(names.begin(), names.end(), "all") != names.end())
    throw UnknownMeasure("'all' cannot be combined with other measures");
  if (names.size() == 1 && names[0] == "all") return all(n_sources);

  MeasureSet set;
  set.n_sources_ = n_sources;
  auto add = [&set](Item item, std::string column) {
    if (std::find(set.columns_.begin(), set.columns_.end(), column) !=
        set.columns_.end())
      throw UnknownMeasure("measure requested twice: " + column);
    set.items_.push_back(item);
    set.columns_.push_back(std::move(column));
  };

  for (const std::string& name : names) {
    if (name == "h_y") {
      add({Kind::kTargetEntropy}, name);
    } else if (name == "mi") {
      add({Kind::kJointMi}, name);
    } else if (name == "ii") {
      add({Kind::kInteraction}, name);
    } else if (name == "ci") {
      add({Kind::kCoInformation}, name);
    } else if (name == "tc") {
      add({Kind::kTotalCorrelation}, name);
    } else if (name == "dtc") {
      add({Kind::kDualTotalCorrelation}, name);
    } else if (name == "delta_i") {
      add({Kind::kDeltaI}, name);
    } else if (name == "mi_delta_gap") {
      add({Kind::kMiDeltaGap}, name);
    } else if (name == "rsi") {
      if (n_sources < 2)
        throw UnknownMeasure("rsi needs at least two sources");
      add({Kind::kRsi}, name);
    } else if (name == "vs") {
      if (n_sources < 2)
        throw UnknownMeasure("vs needs at least two sources");
      add({Kind::kVaradanSynergy}, name);
    } else if (name == "pid") {
      if (!pid_supported(n_sources))
        throw UnknownMeasure("pid needs two or three sources");
      // One column per lattice node; a single item drives them all.
      if (std::any_of(set.items_.begin(), set.items_.end(), [](const Item& i) {
            return i.kind == Kind::kPidAll || i.kind == Kind::kPidTerm;
          }))
        throw UnknownMeasure(
            "pid cannot be combined with individual pid terms");
      set.items_.push_back({Kind::kPidAll});
      for (const Antichain& node : lattice(n_sources)) {
        std::string column = node.column_name();
        if (std::find(set.columns_.begin(), set.columns_.end(), column) !=
            set.columns_.end())
          throw UnknownMeasure("measure requested twice: " + column);
        set.columns_.push_back(std::move(column));
      }
    } else if (name.starts_with("mi_")) {
      std::string digits = name.substr(3);
      if (digits.empty() ||
          !std::all_of(digits.begin(), digits.end(),
                       [](unsigned char c) { return std::isdigit(c); }))
        throw UnknownMeasure("unknown measure: " + name);
      std::size_t k = std::stoul(digits);
      if (k < 1 || k > n_sources)
        throw UnknownMeasure("source index out of range in " + name);
      add({Kind::kSourceMi, k - 1}, name);
    } else if (name.starts_with("pid_")) {
      if (!pid_supported(n_sources))
        throw UnknownMeasure("pid needs two or three sources");
      const auto& nodes = lattice(n_sources);
      std::optional<std::size_t> found;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].column_name() == name) found = i;
      if (!found) throw UnknownMeasure("unknown decomposition term: " + name);
      if (std::any_of(set.items_.begin(), set.items_.end(), [](const Item& i) {
            return i.kind == Kind::kPidAll;
          }))
        throw UnknownMeasure(
            "pid cannot be combined with individual pid terms");
      add({Kind::kPidTerm, 0, *found}, name);
    } else {
      throw UnknownMeasure("unknown measure: " + name);
    }
  }
  return set;
}

MeasureSet MeasureSet::all(std::size_t n_sources) {
  std::vector<std::string> names = {"h_y"};
  for (std::size_t k = 1; k <= n_sources; ++k)
    names.push_back("mi_" + std::to_string(k));
  names.insert(names.end(),
               {"mi", "ii", "ci", "tc", "dtc", "delta_i", "mi_delta_gap"});
  if (n_sources >= 2) names.insert(names.end(), {"rsi", "vs"});
  if (pid_supported(n_sources)) names.push_back("pid");
  return parse(names, n_sources);
}

bool MeasureSet::wants_decomposition() const {
  return std::any_of(items_.begin(), items_.end(), [](const Item& i) {
    return i.kind == Kind::kPidAll || i.kind == Kind::kPidTerm;
  });
}

std::vector<double> MeasureSet::evaluate(const DiscreteDistribution& d,
                                         const SourceTargetSplit& split) const {
  split.check_against(d);
  if (split.sources.size() != n_sources_)
    throw InvalidSplit("split has a different source count than the measures");

  IndexSet target{split.target};
  IndexSet with_target = split.sources.unioned(target);
  std::optional<Decomposition> pid;
  auto decomposition = [&]() -> const Decomposition& {
    if (!pid) pid = decompose(d, split);
    return *pid;
  };

  std::vector<double> out;
  out.reserve(columns_.size());
  for (const Item& item : items_) {
    switch (item.kind) {
      case Kind::kTargetEntropy:
        out.push_back(entropy(d, target));
        break;
      case Kind::kSourceMi:
        out.push_back(mutual_information(
            d, IndexSet{split.sources.members()[item.source]}, target));
        break;
      case Kind::kJointMi:
        out.push_back(mutual_information(d, split.sources, target));
        break;
      case Kind::kInteraction:
        out.push_back(interaction_information(d, with_target));
        break;
      case Kind::kCoInformation:
        out.push_back(co_information(d, with_target));
        break;
      case Kind::kTotalCorrelation:
        out.push_back(total_correlation(d, with_target));
        break;
      case Kind::kDualTotalCorrelation:
        out.push_back(dual_total_correlation(d, with_target));
        break;
      case Kind::kDeltaI:
        out.push_back(delta_i(d, split));
        break;
      case Kind::kMiDeltaGap:
        out.push_back(mi_delta_gap(d, split));
        break;
      case Kind::kRsi:
        out.push_back(redundancy_synergy_index(d, split));
        break;
      case Kind::kVaradanSynergy:
        out.push_back(varadan_synergy(d, split));
        break;
      case Kind::kPidAll:
        for (double t : decomposition().terms) out.push_back(t);
        break;
      case Kind::kPidTerm:
        out.push_back(decomposition().terms[item.pid_node]);
        break;
    }
  }
  if (out.size() != columns_.size())
    throw InternalInconsistency("measure column bookkeeping out of sync");
  return out;
}

}  // namespace mvinfo
