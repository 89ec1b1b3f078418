#include "pkern/engine.hpp"

namespace pkern {

void RoundStats::absorb(const RoundStats& other) {
  rounds += other.rounds;
  work += other.work;
  for (const auto& [rule, n] : other.perRule) perRule[rule] += n;
  for (const auto& [rule, n] : other.commits) commits[rule] += n;
}

std::size_t RoundStats::applications(const std::string& rule) const {
  auto it = perRule.find(rule);
  return it == perRule.end() ? 0 : it->second;
}

std::size_t RoundStats::commitsOf(const std::string& rule) const {
  auto it = commits.find(rule);
  return it == commits.end() ? 0 : it->second;
}

std::pair<ChangeSet, std::size_t> Engine::scanPass(const PassSpec& pass, const Instance& inst,
                                                   RoundStats& stats) const {
  const std::vector<VertexId> items = inst.graph.vertices();
  if (items.empty()) return {ChangeSet{}, 0};
  const ScanFn scanner = pass.bind(inst);
  std::vector<ChangeSet> verdicts =
      scan<ChangeSet>(items.size(), [&](std::size_t i) { return scanner(items[i]); }, stats);
  ChangeSet merged;
  std::size_t applied = 0;
  for (const ChangeSet& v : verdicts) {
    if (v.empty()) continue;
    ++applied;
    merged.merge(v);
  }
  return {std::move(merged), applied};
}

Instance Engine::commitRound(const Instance& inst, const ChangeSet& changes, std::string_view rule,
                             std::size_t applications, RoundStats& stats) const {
  if (changes.empty()) return inst;
  if (options_.roundsBudget && stats.rounds >= *options_.roundsBudget) {
    throw BudgetExceeded(inst, stats);
  }
  Instance next = commit(inst, changes);
  const std::string name(rule);
  stats.rounds += 1;
  stats.work += changes.size();
  stats.perRule[name] += applications;
  stats.commits[name] += 1;
  return next;
}

bool Engine::step(const PassSpec& pass, Instance& inst, RoundStats& stats) const {
  auto [changes, applied] = scanPass(pass, inst, stats);
  if (changes.empty()) return false;
  inst = commitRound(inst, changes, pass.name, applied, stats);
  return true;
}

std::pair<Instance, RoundStats> Engine::runToFixpoint(std::span<const PassSpec> passes, Instance inst,
                                                      std::optional<std::size_t> budget) const {
  RoundStats stats;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const PassSpec& pass : passes) {
      auto [changes, applied] = scanPass(pass, inst, stats);
      if (changes.empty()) continue;
      if (budget && stats.rounds >= *budget) throw BudgetExceeded(inst, stats);
      inst = commitRound(inst, changes, pass.name, applied, stats);
      changed = true;
    }
  }
  return {std::move(inst), std::move(stats)};
}

std::pair<Instance, RoundStats> runSequentialReference(std::span<const PassSpec> passes, Instance inst,
                                                       std::optional<std::size_t> budget) {
  RoundStats stats;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const PassSpec& pass : passes) {
      const std::vector<VertexId> items = inst.graph.vertices();
      if (items.empty()) continue;
      const ScanFn scanner = pass.bind(inst);
      ChangeSet merged;
      std::size_t applied = 0;
      for (VertexId v : items) {
        ChangeSet verdict = scanner(v);
        ++stats.work;
        if (verdict.empty()) continue;
        ++applied;
        merged.merge(verdict);
      }
      if (merged.empty()) continue;
      if (budget && stats.rounds >= *budget) throw BudgetExceeded(inst, stats);
      inst = commit(inst, merged);
      stats.rounds += 1;
      stats.work += merged.size();
      stats.perRule[pass.name] += applied;
      stats.commits[pass.name] += 1;
      changed = true;
    }
  }
  return {std::move(inst), std::move(stats)};
}

}  // namespace pkern
