// Copyright 2026 The CDEE Authors.
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

#include <benchmark/benchmark.h>

#include <random>

#include "cdee/coref.h"

namespace cdee {
namespace {

std::vector<MentionEvent> RandomMentions(size_t n) {
  static const char* kTriggers[] = {"attack", "bombing", "strike", "final", "election"};
  static const char* kEntities[] = {"army", "rebels", "city", "team", "voters", "police"};
  std::mt19937 rng(7);
  std::uniform_int_distribution<size_t> trig(0, 4), ent(0, 5);
  std::vector<MentionEvent> out;
  for (size_t i = 0; i < n; ++i) {
    MentionEvent m;
    m.id = "m" + std::to_string(i);
    m.doc_id = "d" + std::to_string(i % 10);
    size_t t = trig(rng);
    m.trigger_surface = kTriggers[t];
    m.event_type = t < 3 ? EventType::kAttack : EventType::kSport;
    for (int k = 0; k < 3; ++k) {
      Argument a;
      a.role = "role";
      a.entity_surface = kEntities[ent(rng)];
      a.source_doc = m.doc_id;
      m.arguments.push_back(a);
    }
    out.push_back(std::move(m));
  }
  return out;
}

void BM_ScoreAndCluster(benchmark::State& state) {
  std::vector<MentionEvent> mentions = RandomMentions(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    PairScoreTable scores(ScoreAllPairs(mentions));
    benchmark::DoNotOptimize(Retain(Cluster(mentions, scores), scores));
  }
}
BENCHMARK(BM_ScoreAndCluster)->RangeMultiplier(2)->Range(8, 128);

}  // namespace
}  // namespace cdee
