// Copyright 2026 The Vaultgate Authors
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


#include <gtest/gtest.h>

#include "support/properties.hpp"

namespace vaultgate::audit {
namespace {

using vgtest::TempDir;

void fill(Ledger& l, int n) {
  for (int i = 0; i < n; ++i) {
    l.append(i, "actor", i % 2 ? Kind::QueryExecuted : Kind::ContractSubmitted,
             {{"contract_id", i % 3 ? "c1" : "c2"}, {"i", i}});
  }
}

TEST(Ledger, ChainLinksFromGenesis) {
  Ledger l;
  fill(l, 3);
  EXPECT_EQ(l.events()[0].prev_hash, std::string(64, '0'));
  EXPECT_EQ(l.events()[1].prev_hash, l.events()[0].hash);
  EXPECT_EQ(l.head_hash(), l.events()[2].hash);
  for (const auto& e : l.events()) EXPECT_EQ(e.hash, vgtest::oracle_event_hash(e));
  EXPECT_TRUE(verify_chain(l.events()).ok());
}

TEST(Ledger, EmptyHeadIsGenesis) {
  Ledger l;
  EXPECT_EQ(l.head_hash(), genesis_hash());
  EXPECT_TRUE(verify_chain({}).ok());
}

TEST(Ledger, EncodedLinesAreCanonical) {
  Ledger l;
  fill(l, 1);
  const auto line = encode_line(l.events()[0]);
  ASSERT_EQ(line.back(), '\n');
  EXPECT_EQ(canonical_dump(Json::parse(line)) + "\n", line);
  EXPECT_EQ(event_from_json(Json::parse(line)).hash, l.events()[0].hash);
}

TEST(Ledger, PersistsAndReloads) {
  TempDir dir;
  const auto path = dir.path() / "audit.jsonl";
  std::string head;
  {
    Ledger l(path, false);
    fill(l, 5);
    head = l.head_hash();
  }
  const auto anchor = read_head(path);
  ASSERT_TRUE(anchor);
  EXPECT_EQ(anchor->count, 5u);
  EXPECT_EQ(anchor->hash, head);
  Ledger again(path, false);
  EXPECT_EQ(again.size(), 5u);
  again.append(9, "x", Kind::AlertRaised, Json::object());
  EXPECT_EQ(again.events()[5].prev_hash, head);
  EXPECT_TRUE(verify_file(path, read_head(path)).ok());
}

TEST(Ledger, RefusesToOpenTamperedFile) {
  TempDir dir;
  const auto path = dir.path() / "audit.jsonl";
  {
    Ledger l(path, false);
    fill(l, 4);
  }
  auto bytes = vgtest::slurp(path);
  bytes[bytes.find("\"i\":2") + 4] = '7';
  vgtest::spit(path, bytes);
  try {
    Ledger l(path, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StorageFailure);
  }
}

TEST(Ledger, TruncationDetectedThroughHead) {
  TempDir dir;
  const auto path = dir.path() / "audit.jsonl";
  {
    Ledger l(path, false);
    fill(l, 6);
  }
  const auto bytes = vgtest::slurp(path);
  std::size_t cut = 0;
  for (int i = 0; i < 4; ++i) cut = bytes.find('\n', cut) + 1;
  vgtest::spit(path, bytes.substr(0, cut));
  EXPECT_TRUE(verify_file(path).ok());  // a clean prefix is a valid chain
  const auto r = verify_file(path, read_head(path));
  EXPECT_EQ(r.first_bad_seq, 4u);
  std::filesystem::remove(path);
  EXPECT_EQ(verify_file(path, read_head(path)).first_bad_seq, 0u);
}

TEST(Ledger, InjectedFailureLeavesNoTrace) {
  TempDir dir;
  const auto path = dir.path() / "audit.jsonl";
  Ledger l(path, false);
  fill(l, 2);
  const auto before = vgtest::slurp(path);
  l.fail_next_append();
  try {
    l.append(5, "x", Kind::AlertRaised, Json::object());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StorageFailure);
  }
  EXPECT_EQ(l.size(), 2u);
  EXPECT_EQ(vgtest::slurp(path), before);
  l.append(6, "x", Kind::AlertRaised, Json::object());
  EXPECT_EQ(l.size(), 3u);
  EXPECT_TRUE(verify_file(path, read_head(path)).ok());
}

TEST(Ledger, QueryFilters) {
  Ledger l;
  fill(l, 10);
  EXPECT_EQ(l.query({.kind = Kind::QueryExecuted}).size(), 5u);
  EXPECT_EQ(l.query({.contract_id = std::string("c2")}).size(), 4u);
  EXPECT_EQ(l.query({.since = 3, .until = 5}).size(), 3u);
  EXPECT_EQ(l.query({.actor = std::string("nobody")}).size(), 0u);
  EXPECT_EQ(l.query({}).size(), 10u);
}

TEST(Ledger, KindNamesRoundTrip) {
  for (int k = 0; k <= static_cast<int>(Kind::BreakGlassRevoked); ++k) {
    EXPECT_EQ(parse_kind(to_string(static_cast<Kind>(k))), static_cast<Kind>(k));
  }
}

TEST(LedgerProperty, ForgedEventsAgreeWithOracle) {
  vgtest::Rng rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    Ledger l;
    fill(l, 1 + static_cast<int>(vgtest::below(rng, 15)));
    auto events = l.events();
    const std::size_t k = vgtest::below(rng, events.size());
    switch (vgtest::below(rng, 4)) {
      case 0:
        events[k].payload["i"] = 1000;
        break;
      case 1:
        events[k].timestamp += 1;
        break;
      case 2:
        events[k].actor += "!";
        break;
      default:
        // Re-hash the forged event: the next link must then break, unless
        // the forgery is at the tail.
        events[k].payload["forged"] = true;
        events[k].hash = compute_hash(events[k]);
        break;
    }
    const auto got = verify_chain(events).first_bad_seq;
    EXPECT_EQ(got, vgtest::oracle_first_bad(events));
  }
}

TEST(LedgerProperty, TamperingLocated) {
  const auto r = vgtest::check_tamper(30, 60, 15, 15, 52);
  EXPECT_TRUE(r.ok) << r.detail;
}

}  // namespace
}  // namespace vaultgate::audit
