// Copyright 2026 The qmotion Authors
//
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

#include "qmotion/solver.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <stdexcept>

#include "qmotion/errors.hpp"

namespace qmotion {

HeuristicSet HeuristicSet::parse(std::string_view name) {
  if (name == "none") return none();
  if (name == "h1") return h1();
  if (name == "h2") return h2();
  if (name == "h1h2") return both();
  throw std::invalid_argument("unknown heuristic setting '" + std::string(name) + "'");
}

std::string HeuristicSet::name() const {
  if (resistant_cancels_only && action_moves_object) return "h1h2";
  if (resistant_cancels_only) return "h1";
  if (action_moves_object) return "h2";
  return "none";
}

const GroupedAssignment* Solution::find(std::string_view var_id) const {
  for (const auto& a : assignments) {
    if (a.var_id == var_id) return &a;
  }
  return nullptr;
}

namespace {

std::vector<QualitativeForce> forces_of(const std::vector<KnownForce>& known) {
  std::vector<QualitativeForce> out;
  out.reserve(known.size());
  for (const auto& k : known) out.push_back(k.force);
  return out;
}

std::vector<bool> resistant_flags(const std::vector<KnownForce>& known, bool enabled) {
  std::vector<bool> out;
  if (!enabled) return out;
  for (const auto& k : known) out.push_back(k.resistant());
  return out;
}

std::optional<Entailment> entail(const StateChange& observed, const std::vector<KnownForce>& known,
                                 bool h1, std::size_t cap) {
  const std::vector<QualitativeForce> forces = forces_of(known);
  const std::vector<bool> flags = resistant_flags(known, h1);
  // std::vector<bool> has no contiguous storage.
  std::unique_ptr<bool[]> raw(new bool[flags.size()]);
  std::copy(flags.begin(), flags.end(), raw.get());
  return explain_change(observed, forces, std::span<const bool>(raw.get(), flags.size()), cap);
}

ObjectTrace make_trace(const Vertex& v, const Entailment& e) {
  ObjectTrace t;
  t.object = v.id;
  t.observed = v.observed;
  for (const ForceUse& use : e.used) {
    t.terms.push_back({v.known[use.index].var_id, use.qd, use.qr, use.resistant});
  }
  t.linear = e.linear;
  t.angular = e.angular;
  t.matched = e.matched;
  return t;
}

Solution to_solution(const SearchNode& leaf, bool h1) {
  std::vector<GroupedAssignment> assignments;
  for (const Vertex& v : leaf.graph.vertices) {
    for (const KnownForce& k : v.known) {
      if (k.kind == ForceKind::Action) {
        assignments.push_back({std::string(kActionVar), k.force, k.kind});
      } else {
        assignments.push_back({k.var_id, k.force, k.kind});
      }
    }
  }
  std::sort(assignments.begin(), assignments.end(),
            [](const auto& a, const auto& b) { return a.var_id < b.var_id; });
  std::vector<ObjectTrace> trace = leaf.trace;
  std::sort(trace.begin(), trace.end(),
            [](const auto& a, const auto& b) { return a.object < b.object; });
  return {*leaf.action, std::move(assignments), std::move(trace), h1};
}

void search(const SearchNode& node, const SolverConfig& cfg, std::vector<Solution>& out) {
  if (cfg.max_solutions && out.size() >= *cfg.max_solutions) return;
  const auto vertex = select_vertex(node, cfg.vertex_order);
  if (!vertex) {
    out.push_back(to_solution(node, cfg.heuristics.resistant_cancels_only));
    return;
  }
  for (const SearchNode& child : branch_intermediate(node, *vertex, cfg)) {
    search(child, cfg, out);
    if (cfg.max_solutions && out.size() >= *cfg.max_solutions) return;
  }
}

}  // namespace

std::vector<SearchNode> branch_root(const Scene& scene, const SolverConfig& cfg) {
  if (cfg.subset_cap < 1) throw std::invalid_argument("subset_cap must be at least 1");
  const StructureGraph graph = prune_vanishing(build_graph(scene));

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    const Vertex& v = graph.vertices[i];
    if (v.is_static) continue;
    if (cfg.heuristics.action_moves_object && v.observed.is_zero()) continue;
    candidates.push_back(i);
  }
  if (cfg.heuristics.action_moves_object && candidates.empty()) throw NoMovedObject();

  std::vector<SignVec> directions;
  if (cfg.group_action_directions) {
    directions.push_back(SignVec::all());
  } else {
    for (std::size_t d = 0; d < kDefiniteVectors; ++d) {
      const SignVec qd = SignVec::from_index(d);
      if (!qd.is_zero()) directions.push_back(qd);
    }
  }

  std::vector<SearchNode> children;
  children.reserve(candidates.size() * kDefiniteVectors * directions.size());
  for (std::size_t i : candidates) {
    for (std::size_t r = 0; r < kDefiniteVectors; ++r) {
      const SignVec qr = SignVec::from_index(r);
      for (const SignVec& qd : directions) {
        SearchNode child{graph, QualitativeAction({qd, qr, graph.vertices[i].id}), {}};
        child.graph.vertices[i].known.push_back(
            {std::string(kActionVar), child.action->force(), ForceKind::Action});
        children.push_back(std::move(child));
      }
    }
  }
  return children;
}

std::optional<std::size_t> select_vertex(const SearchNode& node, VertexOrder order) {
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < node.graph.vertices.size(); ++i) {
    const Vertex& v = node.graph.vertices[i];
    if (v.is_static || v.flag == VertexFlag::Checked) continue;
    if (order == VertexOrder::Canonical) return i;
    if (v.has_nongravity_force()) return i;
    if (!first) first = i;
  }
  return first;
}

std::vector<SearchNode> branch_intermediate(const SearchNode& node, std::size_t vertex,
                                            const SolverConfig& cfg) {
  const StructureGraph& g = node.graph;
  if (vertex >= g.vertices.size() || g.vertices[vertex].flag != VertexFlag::ToCheck ||
      g.vertices[vertex].is_static) {
    throw std::invalid_argument("branch_intermediate needs a movable to-check vertex");
  }

  // Unlabeled incoming variables from to-check neighbours.
  std::vector<std::size_t> incoming;
  std::vector<std::vector<SignVec>> groups;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& edge = g.edges[e];
    if (edge.to != vertex || edge.label || edge.vanishing) continue;
    if (g.vertices[edge.from].flag != VertexFlag::ToCheck) continue;
    incoming.push_back(e);
    groups.push_back(rule2_direction_groups(g.normal_on_target(e)));
  }

  const Vertex& v = g.vertices[vertex];
  const bool h1 = cfg.heuristics.resistant_cancels_only;
  std::vector<SearchNode> children;
  std::vector<std::size_t> choice(incoming.size(), 0);
  while (true) {
    std::vector<KnownForce> known = v.known;
    for (std::size_t i = 0; i < incoming.size(); ++i) {
      const std::size_t e = incoming[i];
      known.push_back({g.var_id(e), {groups[i][choice[i]], g.locus_on_target(e), v.id},
                       ForceKind::Assigned});
    }
    if (auto witness = entail(v.observed, known, h1, cfg.subset_cap)) {
      SearchNode child = node;
      Vertex& cv = child.graph.vertices[vertex];
      cv.known = std::move(known);
      cv.label = cv.after;
      cv.flag = VertexFlag::Checked;
      for (std::size_t i = 0; i < incoming.size(); ++i) {
        const std::size_t e = incoming[i];
        const std::size_t back = StructureGraph::paired(e);
        const Edge& reverse = child.graph.edges[back];
        child.graph.edges[e].label = QualitativeForce{groups[i][choice[i]], g.locus_on_target(e), v.id};
        const QualitativeForce reaction{third_law_pair(groups[i][choice[i]]),
                                        g.locus_on_target(back), g.vertices[reverse.to].id};
        child.graph.edges[back].label = reaction;
        child.graph.vertices[reverse.to].known.push_back(
            {g.var_id(back), reaction, ForceKind::Reaction});
      }
      child.trace.push_back(make_trace(cv, *witness));
      children.push_back(std::move(child));
    }

    // Next combination, last variable fastest.
    std::size_t i = incoming.size();
    while (i > 0) {
      --i;
      if (++choice[i] < groups[i].size()) break;
      choice[i] = 0;
      if (i == 0) return children;
    }
    if (incoming.empty()) return children;
  }
}

std::vector<Solution> solve(const Scene& scene, const SolverConfig& cfg) {
  const std::vector<SearchNode> roots = branch_root(scene, cfg);
  std::vector<std::vector<Solution>> per_root(roots.size());

  const unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1 || cfg.max_solutions) {
    std::vector<Solution> out;
    for (const SearchNode& root : roots) {
      search(root, cfg, out);
      if (cfg.max_solutions && out.size() >= *cfg.max_solutions) break;
    }
    return out;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < roots.size(); i = next++) search(roots[i], cfg, per_root[i]);
  };
  std::vector<std::future<void>> pool;
  for (unsigned t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();

  std::vector<Solution> out;
  for (auto& part : per_root) {
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

bool validate_solution(const Scene& scene, const Solution& sol) {
  StructureGraph g;
  try {
    g = prune_vanishing(build_graph(scene));
  } catch (const Error&) {
    return false;
  }
  std::map<std::string, const GroupedAssignment*> by_var;
  for (const auto& a : sol.assignments) {
    if (!by_var.emplace(a.var_id, &a).second) return false;
  }

  // The action variable, when present, is the reported action on a movable object.
  if (auto it = by_var.find(std::string(kActionVar)); it != by_var.end()) {
    if (it->second->value != sol.action.force()) return false;
  }
  const auto action_vertex = g.find(sol.action.object());
  if (!action_vertex || g.vertices[*action_vertex].is_static) return false;

  std::map<ObjectId, std::vector<KnownForce>> forces;
  for (const Vertex& v : g.vertices) {
    if (v.is_static) continue;
    const std::string gid = "g@" + v.id.value;
    const bool has_gravity = by_var.contains(gid);
    if (has_gravity != scene.gravity) return false;
    if (has_gravity) {
      if (by_var[gid]->value != QualitativeForce::gravity(v.id)) return false;
      forces[v.id].push_back({gid, by_var[gid]->value, ForceKind::Gravity});
    }
  }
  if (auto it = by_var.find(std::string(kActionVar)); it != by_var.end()) {
    forces[sol.action.object()].push_back({it->first, it->second->value, ForceKind::Action});
  }

  std::size_t accounted = 0;
  for (const auto& [id, list] : forces) accounted += list.size();

  for (std::size_t e = 0; e < g.edges.size(); e += 2) {
    const Edge& edge = g.edges[e];
    const bool movable = !g.vertices[edge.from].is_static || !g.vertices[edge.to].is_static;
    for (std::size_t side : {e, e + 1}) {
      const auto it = by_var.find(g.var_id(side));
      const bool assigned = it != by_var.end();
      if (edge.vanishing || !movable) {
        if (assigned) return false;
        continue;
      }
      if (!assigned) return false;
      const GroupedAssignment& a = *it->second;
      const Vertex& target = g.vertices[g.edges[side].to];
      if (a.value.object != target.id || a.value.qr != g.locus_on_target(side)) return false;
      if (a.kind != ForceKind::Assigned && a.kind != ForceKind::Reaction) return false;
      if (!satisfies_no_attraction(a.value.qd, g.geometry_on_target(side))) return false;
      if (!target.is_static) forces[target.id].push_back({a.var_id, a.value, a.kind});
      ++accounted;
    }
    if (edge.vanishing || !movable) continue;
    const auto& l = by_var[g.var_id(e)];
    const auto& r = by_var[g.var_id(e + 1)];
    if (l->value.qd != third_law_pair(r->value.qd)) return false;
    // Exactly one side of a pair is assigned, the other follows by Rule 3.
    if ((l->kind == ForceKind::Assigned) == (r->kind == ForceKind::Assigned)) return false;
  }

  // Every assignment must belong to some variable of the scene.
  if (accounted != sol.assignments.size()) return false;

  std::map<ObjectId, const ObjectTrace*> traces;
  for (const auto& t : sol.trace) traces[t.object] = &t;

  for (const Vertex& v : g.vertices) {
    if (v.is_static) continue;
    const auto& list = forces[v.id];
    if (!entail(v.observed, list, sol.resistant_semantics, kDefiniteStates)) return false;

    // The recorded witness must itself reproduce the observed change.
    const auto t = traces.find(v.id);
    if (t == traces.end()) return false;
    const ObjectTrace& trace = *t->second;
    if (trace.observed != v.observed) return false;
    SignVec lin_plain, ang_plain, lin_res, ang_res;
    for (const TraceTerm& term : trace.terms) {
      auto k = std::find_if(list.begin(), list.end(),
                            [&](const KnownForce& f) { return f.var_id == term.var_id; });
      if (k == list.end()) return false;
      if (!term.qd.is_definite() || !term.qr.is_definite()) return false;
      if (!k->force.qd.covers(term.qd) || !k->force.qr.covers(term.qr)) return false;
      const bool resistant = sol.resistant_semantics && k->resistant();
      if (term.resistant != resistant) return false;
      SignVec& lin = resistant ? lin_res : lin_plain;
      SignVec& ang = resistant ? ang_res : ang_plain;
      lin = vec_add(lin, term.qd);
      ang = vec_add(ang, vec_cross(term.qr, term.qd));
    }
    const SignVec lin = sol.resistant_semantics ? heuristic_resistant_add(lin_res, lin_plain) : lin_plain;
    const SignVec ang = sol.resistant_semantics ? heuristic_resistant_add(ang_res, ang_plain) : ang_plain;
    if (!trace.matched.is_definite()) return false;
    if (!lin.covers(trace.matched.dqv) || !ang.covers(trace.matched.dqw)) return false;
    if (!v.observed.dqv.covers(trace.matched.dqv) || !v.observed.dqw.covers(trace.matched.dqw)) {
      return false;
    }
  }
  return true;
}

std::vector<QualitativeAction> distinct_actions(std::span<const Solution> solutions) {
  std::vector<QualitativeAction> out;
  for (const auto& s : solutions) out.push_back(s.action);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace qmotion
