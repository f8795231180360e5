// Copyright 2026 The comply Authors
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

#include "comply/generator.hpp"

#include <algorithm>
#include <random>

#include "comply/errors.hpp"

namespace comply {

namespace {

class Builder {
 public:
  Builder(const GeneratorParams& params, std::mt19937_64& rng) : p_(params), rng_(rng) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  // Wraps a run of tasks in a random gateway structure.
  ProcessGraph block(std::vector<ProcessGraph> tasks, int depth) {
    if (tasks.size() >= 2) {
      const double r = uniform();
      if (r < p_.xor_share + p_.and_share) {
        auto mid = tasks.begin() + static_cast<std::ptrdiff_t>(1 + pick(static_cast<int>(tasks.size()) - 1));
        std::vector<ProcessGraph> left(tasks.begin(), mid), right(mid, tasks.end());
        std::vector<ProcessGraph> branches{block(std::move(left), depth), block(std::move(right), depth)};
        ProcessGraph g = r < p_.xor_share ? xor_of(std::move(branches)) : and_of(std::move(branches));
        return maybe_loop(std::move(g), depth);
      }
    }
    ProcessGraph g = tasks.size() == 1 ? std::move(tasks.front()) : seq(std::move(tasks));
    return maybe_loop(std::move(g), depth);
  }

 private:
  ProcessGraph maybe_loop(ProcessGraph g, int depth) {
    if (depth < p_.loop_depth && uniform() < p_.loop_share) return loop(std::move(g), 2);
    return g;
  }

  const GeneratorParams& p_;
  std::mt19937_64& rng_;
};

std::optional<ProcessGraph> public_view(const ProcessGraph& g) {
  if (g.is_activity()) {
    if (g.activity == ActivityKind::private_task) return std::nullopt;
    return g;
  }
  if (g.kind == BlockKind::loop) {
    auto body = public_view(g.children.front());
    if (!body) return std::nullopt;
    return loop(std::move(*body), g.max_unroll);
  }
  std::vector<ProcessGraph> kids;
  bool any = false;
  for (const auto& c : g.children) {
    auto v = public_view(c);
    any = any || v.has_value();
    if (v) kids.push_back(std::move(*v));
    else if (g.kind != BlockKind::seq) kids.push_back(seq({}));
  }
  if (!any) return std::nullopt;
  ProcessGraph out = g;
  out.children = std::move(kids);
  return out;
}

}  // namespace

GeneratedCase generate_case(const GeneratorParams& params, std::uint64_t seed) {
  if (params.partners < 1) throw InputError("generator needs at least one partner");
  if (params.activities < 0 || params.messages < 0 || params.loop_depth < 0) {
    throw InputError("generator counts must not be negative");
  }
  if (params.messages > 0 && params.partners < 2) {
    throw InputError("messages need at least two partners");
  }
  std::mt19937_64 rng(seed);
  Builder b(params, rng);

  GeneratedCase out;
  Choreography& chor = out.chor;
  const int n = params.partners;
  for (int i = 1; i <= n; ++i) chor.partners.push_back("P" + std::to_string(i));

  struct Msg {
    std::string name;
    int from;
    int to;
  };
  std::vector<Msg> msgs;
  for (int k = 1; k <= params.messages; ++k) {
    int from = b.pick(n);
    int to = b.pick(n - 1);
    if (to >= from) ++to;
    msgs.push_back({"m" + std::to_string(k), from, to});
  }
  const bool plant = params.plant_rule && n >= 2;
  int plant_at = -1;
  if (plant && params.plant_chain) {
    plant_at = b.pick(static_cast<int>(msgs.size()) + 1);
    msgs.insert(msgs.begin() + plant_at, Msg{"m_plant", 0, 1});
  }

  std::vector<ProcessGraph> choreo;
  for (const auto& m : msgs) choreo.push_back(interaction(m.name));
  chor.choreography = seq(std::move(choreo));

  for (int i = 0; i < n; ++i) {
    const std::string& me = chor.partners[static_cast<std::size_t>(i)];
    std::vector<const Msg*> mine;
    for (const auto& m : msgs) {
      if (m.from == i || m.to == i) mine.push_back(&m);
    }
    // Tasks go into the gaps around the partner's messages.
    std::vector<std::vector<ProcessGraph>> gaps(mine.size() + 1);
    for (int t = 1; t <= params.activities; ++t) {
      const auto kind = b.uniform() < 0.3 ? ActivityKind::public_task : ActivityKind::private_task;
      gaps[static_cast<std::size_t>(b.pick(static_cast<int>(gaps.size())))].push_back(
          task("task" + std::to_string(t), kind));
    }
    std::vector<ProcessGraph> top;
    auto flush = [&](std::size_t gap) {
      if (!gaps[gap].empty()) top.push_back(b.block(std::move(gaps[gap]), 0));
    };
    for (std::size_t k = 0; k < mine.size(); ++k) {
      flush(k);
      const Msg& m = *mine[k];
      const bool planted_msg = m.name == "m_plant";
      if (m.from == i) {
        if (planted_msg) top.push_back(task("planted_a"));
        top.push_back(send_task(m.name, m.name, chor.partners[static_cast<std::size_t>(m.to)]));
      } else {
        top.push_back(receive_task(m.name, m.name, chor.partners[static_cast<std::size_t>(m.from)]));
        if (planted_msg) top.push_back(task("planted_b"));
      }
    }
    flush(mine.size());
    if (plant && !params.plant_chain && i < 2) {
      auto pos = top.begin() + b.pick(static_cast<int>(top.size()) + 1);
      top.insert(pos, task(i == 0 ? "planted_a" : "planted_b"));
    }
    ProcessGraph model = seq(std::move(top));
    chor.public_models[me] = public_view(model).value_or(seq({}));
    chor.private_models[me] = std::move(model);
  }
  chor.gamma = derive_gamma(chor);

  if (plant) {
    ComplianceRule r;
    r.id = "planted";
    r.nodes = {{"planted_a", "planted_a", "P1", Pattern::ante_occ, MessageRole::none},
               {"planted_b", "planted_b", "P2", Pattern::cons_occ, MessageRole::none}};
    r.edges = {{"planted_a", "planted_b", Connector::consequence}};
    out.planted = std::move(r);
  }
  return out;
}

Choreography generate_random_choreography(const GeneratorParams& params, std::uint64_t seed) {
  return generate_case(params, seed).chor;
}

ComplianceRule random_tree_rule(const Choreography& chor, int nodes, std::uint64_t seed) {
  if (nodes < 1) throw InputError("a rule needs at least one node");
  std::vector<std::pair<std::string, std::string>> tasks;
  for (const auto& p : chor.partners) {
    for (const auto* a : activities(chor.private_model(p))) {
      if (!a->is_message()) tasks.emplace_back(p, a->label);
    }
  }
  if (tasks.size() < static_cast<std::size_t>(nodes)) {
    throw InputError("choreography has only " + std::to_string(tasks.size()) + " tasks");
  }
  std::mt19937_64 rng(seed);
  std::shuffle(tasks.begin(), tasks.end(), rng);

  ComplianceRule r;
  r.id = "tree" + std::to_string(nodes);
  for (int i = 0; i < nodes; ++i) {
    const auto& [partner, label] = tasks[static_cast<std::size_t>(i)];
    RuleNode node;
    node.id = "n" + std::to_string(i);
    node.activity = label;
    node.partner = partner;
    node.pattern = i == 0 ? Pattern::ante_occ : Pattern::cons_occ;
    r.nodes.push_back(std::move(node));
    if (i == 0) continue;
    const int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
    const bool forward = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    const std::string a = "n" + std::to_string(parent), c = "n" + std::to_string(i);
    r.edges.push_back({forward ? a : c, forward ? c : a, Connector::consequence});
  }
  return r;
}

}  // namespace comply
