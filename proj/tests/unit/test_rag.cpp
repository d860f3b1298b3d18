// Copyright 2026 The Counterpoint Authors
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

#include <doctest.h>

#include <filesystem>
#include <random>
#include <thread>

#include "counterpoint/core/files.hpp"
#include "counterpoint/rag/chunker.hpp"
#include "counterpoint/rag/index.hpp"
#include "counterpoint/rag/qa.hpp"
#include "counterpoint/rag/retrieval.hpp"
#include "oracles/rag_oracle.hpp"
#include "support.hpp"

using namespace counterpoint;
using namespace counterpoint::rag;
using counterpoint::llm::EmbeddingVector;
using counterpoint::llm::TemplateId;
using testing::code_of;

namespace {

std::string words(std::size_t n, std::size_t offset = 0) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += (i % 17 == 0) ? "\n" : " ";
    out += "w" + std::to_string(i + offset);
  }
  return out;
}

Document doc_of(const std::string& body) { return ingest_document(body, "Chunk test", Lean::Neutral); }

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("counterpoint-rag-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

VectorIndex make_index(const std::vector<std::vector<float>>& vectors) {
  VectorIndex index;
  index.doc_id = "d";
  index.dimension = vectors.empty() ? 0 : vectors.front().size();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    index.records.push_back({static_cast<std::uint32_t>(i), EmbeddingVector{vectors[i]}});
  }
  return index;
}

}  // namespace

TEST_CASE("short document yields one chunk spanning the whole body") {
  const auto doc = doc_of("  " + words(120) + "\n");
  const auto chunks = chunk_document(doc);
  REQUIRE(chunks.size() == 1);
  CHECK(chunks[0].span == Span{0, doc.length()});
  CHECK(chunks[0].token_count == 120);
  CHECK(chunks[0].text == doc.body());
}

TEST_CASE("700 tokens at 300/60 give starts 0, 240, 480 and a 220-token tail") {
  const auto doc = doc_of(words(700));
  const auto chunks = chunk_document(doc, {300, 60});
  REQUIRE(chunks.size() == 3);
  const auto expected_starts = oracle::chunk_starts(700, 300, 60);
  REQUIRE(expected_starts.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(chunks[i].first_token == expected_starts[i]);
  CHECK(chunks[0].token_count == 300);
  CHECK(chunks[1].token_count == 300);
  CHECK(chunks[2].token_count == 220);
  CHECK(oracle::split_words(chunks[2].text).front() == "w480");
  CHECK(oracle::split_words(chunks[2].text).back() == "w699");
}

TEST_CASE("invalid chunk parameters") {
  const auto doc = doc_of(words(10));
  CHECK(code_of([&] { chunk_document(doc, {300, 300}); }) == ErrorCode::InvalidChunkParams);
  CHECK(code_of([&] { chunk_document(doc, {10, 11}); }) == ErrorCode::InvalidChunkParams);
  CHECK(code_of([&] { chunk_document(doc, {0, 0}); }) == ErrorCode::InvalidChunkParams);
  CHECK(chunk_document(doc, {1, 0}).size() == 10);
}

TEST_CASE("chunk tokens use Unicode whitespace and code-point spans") {
  const auto doc = doc_of("caf\xC3\xA9\xE2\x80\x83na\xC3\xAFve  r\xC3\xA9sum\xC3\xA9 d\xC3\xA9j\xC3\xA0");
  const auto tokens = whitespace_tokens(doc);
  REQUIRE(tokens.size() == 4);
  CHECK(tokens[1] == Span{5, 10});
  const auto chunks = chunk_document(doc, {2, 1});
  REQUIRE(chunks.size() == 3);
  CHECK(chunks[1].span.start == 5);
  CHECK(chunks[1].text == "na\xC3\xAFve  r\xC3\xA9sum\xC3\xA9 ");
}

TEST_CASE("property: chunk counts follow the stride formula and segments rebuild the token sequence") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t total = std::uniform_int_distribution<std::size_t>(1, 900)(rng);
    const std::size_t size = std::uniform_int_distribution<std::size_t>(1, 320)(rng);
    const std::size_t overlap = std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
    const auto doc = doc_of(words(total, trial));
    const auto chunks = chunk_document(doc, {size, overlap});
    const auto starts = oracle::chunk_starts(total, size, overlap);
    REQUIRE(chunks.size() == starts.size());
    CHECK(chunk_count(total, {size, overlap}) == starts.size());

    const auto body_words = oracle::split_words(doc.body());
    std::vector<std::string> rebuilt;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      CHECK(chunks[i].first_token == starts[i]);
      const auto w = oracle::split_words(chunks[i].text);
      REQUIRE(w.size() == chunks[i].token_count);
      const std::size_t skip = i == 0 ? 0 : overlap;
      if (i > 0) CHECK((overlap > 0) == (chunks[i].span.start < chunks[i - 1].span.end));
      if (i > 0) CHECK(chunks[i].span.start >= chunks[i - 1].span.start);
      rebuilt.insert(rebuilt.end(), w.begin() + static_cast<std::ptrdiff_t>(std::min(skip, w.size())), w.end());
    }
    CHECK(rebuilt == body_words);
    CHECK(chunks.front().span.start == 0);
    CHECK(chunks.back().span.end == doc.length());
  }
}

TEST_CASE("build_index embeds every chunk with one dimension and rebuilds byte-identically") {
  auto provider = std::make_shared<testing::RecordingProvider>();
  const auto gw = testing::make_gateway(provider);
  const auto doc = doc_of(words(700));
  const auto index = build_index(doc, gw, {300, 60});
  REQUIRE(index.records.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(index.records[i].chunk_index == i);
    CHECK(index.records[i].vector.dimension() == index.dimension);
  }
  CHECK(index.doc_id == doc.id());
  const auto dir = temp_dir("rebuild");
  save_index(index, dir / "a.idx");
  save_index(build_index(doc, gw, {300, 60}), dir / "b.idx");
  CHECK(read_file(dir / "a.idx") == read_file(dir / "b.idx"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("embedding failure mid-build leaves no index file behind") {
  auto provider = std::make_shared<testing::RecordingProvider>();
  provider->fail_embed_on_call = 2;
  const auto gw = testing::make_gateway(provider);
  const auto doc = doc_of(words(700));
  const auto dir = temp_dir("fault");
  const auto path = dir / "doc.idx";
  CHECK(code_of([&] { save_index(build_index(doc, gw, {100, 10}, 2), path); }) == ErrorCode::ProviderUnavailable);
  CHECK(provider->embed_calls >= 2);
  CHECK_FALSE(std::filesystem::exists(path));
  CHECK(std::filesystem::is_empty(dir));
  std::filesystem::remove_all(dir);
}

TEST_CASE("index serialization round-trips and rejects bad input") {
  auto index = make_index({{1.0f, 0.0f, -2.5f}, {0.25f, 0.5f, 0.75f}});
  index.params = {50, 5};
  const std::string bytes = serialize_index(index);
  CHECK(bytes.substr(0, 4) == "CPVI");
  CHECK(bytes.size() == 4 + 4 + 4 + 1 + 4 + 4 + 4 + 4 + 2 * (4 + 12));
  // version is little-endian 1
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 0);
  const auto back = deserialize_index(bytes);
  CHECK(back.doc_id == "d");
  CHECK(back.dimension == 3);
  CHECK(back.params.size == 50);
  CHECK(back.params.overlap == 5);
  CHECK(back.records == index.records);

  std::string bumped = bytes;
  bumped[4] = 2;
  CHECK(code_of([&] { deserialize_index(bumped); }) == ErrorCode::UnknownSchemaVersion);
  CHECK(code_of([&] { deserialize_index(bytes.substr(0, bytes.size() - 1)); }) == ErrorCode::CorruptArtifact);
  CHECK(code_of([&] { deserialize_index(bytes + "x"); }) == ErrorCode::CorruptArtifact);
  CHECK(code_of([&] { deserialize_index("XXXX" + bytes.substr(4)); }) == ErrorCode::CorruptArtifact);
  CHECK(code_of([&] { load_index("/nonexistent/path.idx"); }) == ErrorCode::NotFound);
}

TEST_CASE("retrieve clips k and breaks ties by chunk index") {
  auto provider = std::make_shared<testing::RecordingProvider>();
  const auto gw = testing::make_gateway(provider);
  const auto doc = doc_of(words(700));
  const auto index = build_index(doc, gw, {300, 60});
  const auto hits = retrieve(index, "w500 w510", gw, 10);
  REQUIRE(hits.size() == 3);
  CHECK(hits[0].score >= hits[1].score);
  CHECK(hits[1].score >= hits[2].score);

  const auto tied = make_index({{1, 0}, {0, 1}, {0, 1}, {0, 0}});
  const auto r = rank(tied, EmbeddingVector{{0, 1}}, 4);
  REQUIRE(r.size() == 4);
  CHECK(r[0].chunk_index == 1);
  CHECK(r[1].chunk_index == 2);
  CHECK(r[2].chunk_index == 0);
  CHECK(r[3].chunk_index == 3);
  CHECK(std::isinf(r[3].score));

  CHECK(code_of([&] { retrieve(VectorIndex{}, "q", gw); }) == ErrorCode::EmptyIndex);
  CHECK(code_of([&] { retrieve(index, "q", gw, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("property: retrieval equals brute-force cosine ranking and the kernels agree") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 400)(rng);
    const std::size_t dim = std::uniform_int_distribution<std::size_t>(1, 24)(rng);
    std::uniform_int_distribution<int> coarse(-3, 3);
    std::vector<std::vector<float>> vectors(n, std::vector<float>(dim));
    for (auto& v : vectors) {
      for (auto& x : v) x = static_cast<float>(coarse(rng)) / 2.0f;
    }
    for (std::size_t i = 0; i + 1 < n; i += 7) vectors[i + 1] = vectors[i];
    std::vector<float> q(dim);
    for (auto& x : q) x = static_cast<float>(coarse(rng));
    const auto index = make_index(vectors);
    const auto serial = score_records_serial(q, index);
    CHECK(serial == score_records_parallel(q, index));
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n + 3)(rng);
    const auto got = rank(index, EmbeddingVector{q}, k);
    const auto want = oracle::rank_all(q, vectors);
    REQUIRE(got.size() == std::min(k, n));
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].chunk_index == want[i].first);
      CHECK(got[i].score == want[i].second);
    }
  }
}

TEST_CASE("answer appends a user turn and a bot turn citing retrieved chunks") {
  auto provider = std::make_shared<testing::RecordingProvider>();
  const auto gw = testing::make_gateway(provider);
  const auto doc = doc_of(words(700));
  const auto index = build_index(doc, gw, {300, 60});
  std::int64_t now = 1000;
  const Clock clock = [&] { return now++; };
  auto conv = answer(doc, index, new_conversation(doc.id(), "q1"), "What is w10?", gw, {}, clock);
  REQUIRE(conv.turns.size() == 2);
  CHECK(conv.turns[0].role == Role::User);
  CHECK(conv.turns[0].text == "What is w10?");
  CHECK(conv.turns[1].role == Role::Bot);
  CHECK_FALSE(conv.turns[1].cited_chunks.empty());
  CHECK(conv.turns[1].cited_chunks.size() <= 3);
  CHECK(conv.turns[0].timestamp_ms < conv.turns[1].timestamp_ms);

  conv = answer(doc, index, conv, "And w600?", gw, {}, clock);
  REQUIRE(conv.turns.size() == 4);
  CHECK(well_formed(conv));
  const auto last = provider->requests().back();
  CHECK(last.template_id == TemplateId::QaAnswer);
  CHECK(last.prompt.find("Reader: What is w10?") != std::string::npos);
  CHECK(last.prompt.find("Question: And w600?") != std::string::npos);

  CHECK(code_of([&] { answer(doc, index, conv, "   ", gw); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { answer(doc, VectorIndex{doc.id()}, conv, "q?", gw); }) == ErrorCode::EmptyIndex);
}

TEST_CASE("engineered embeddings put chunk 2 first for a chunk-2 question") {
  const auto doc = doc_of(words(700));
  const auto chunks = chunk_document(doc, {300, 60});
  REQUIRE(chunks.size() == 3);
  llm::FixtureSet fixtures;
  // Hand-computable cosines against q = (0, 0, 1): chunk0 0, chunk1 0.6, chunk2 1.
  const std::vector<std::vector<float>> vecs{{1, 0, 0}, {0.8f, 0, 0.6f}, {0, 0, 1}};
  for (std::size_t i = 0; i < 3; ++i) {
    std::string t = chunks[i].text;
    while (!t.empty() && (t.back() == ' ' || t.back() == '\n')) t.pop_back();
    fixtures.add_embedding(t, EmbeddingVector{vecs[i]});
  }
  const std::string question = "Which token closes the article?";
  fixtures.add_embedding(question, EmbeddingVector{{0, 0, 1}});
  auto provider = std::make_shared<testing::RecordingProvider>(std::move(fixtures));
  const auto gw = testing::make_gateway(provider);
  const auto index = build_index(doc, gw, {300, 60});
  const auto hits = retrieve(index, question, gw);
  REQUIRE(hits.size() == 3);
  CHECK(hits[0].chunk_index == 2);
  CHECK(hits[0].score == doctest::Approx(1.0));
  CHECK(hits[1].chunk_index == 1);
  CHECK(hits[1].score == doctest::Approx(0.6));
  const auto conv = answer(doc, index, new_conversation(doc.id(), "c"), question, gw);
  CHECK(conv.turns[1].cited_chunks.front() == 2);
}

TEST_CASE("property: alternation and citation subset hold across many answers") {
  auto provider = std::make_shared<testing::RecordingProvider>();
  const auto gw = testing::make_gateway(provider);
  const auto doc = doc_of(words(400));
  const auto index = build_index(doc, gw, {50, 10});
  auto conv = new_conversation(doc.id(), "p");
  std::mt19937 rng(3);
  for (int i = 0; i < 25; ++i) {
    const std::string q = "w" + std::to_string(rng() % 400) + " w" + std::to_string(rng() % 400) + "?";
    conv = answer(doc, index, conv, q, gw, {3, 6});
    CHECK(well_formed(conv));
    const auto expected = retrieve(index, q, gw, 3);
    std::vector<std::size_t> ids;
    for (const auto& h : expected) ids.push_back(h.chunk_index);
    CHECK(conv.turns.back().cited_chunks == ids);
  }
  CHECK(conv.turns.size() == 50);
  const std::string prompt = provider->requests().back().prompt;
  // Only the last 6 turns of history are rendered.
  std::size_t readers = 0;
  for (std::size_t p = prompt.find("Reader: "); p != std::string::npos; p = prompt.find("Reader: ", p + 1)) ++readers;
  CHECK(readers == 3);
}

TEST_CASE("concurrent answers on distinct conversations are independent") {
  auto provider = std::make_shared<testing::RecordingProvider>();
  const auto gw = testing::make_gateway(provider);
  const auto doc = doc_of(words(400));
  const auto index = build_index(doc, gw, {50, 10});
  std::vector<QaConversation> convs(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < convs.size(); ++t) {
    threads.emplace_back([&, t] {
      auto c = new_conversation(doc.id(), "t" + std::to_string(t));
      for (int i = 0; i < 5; ++i) c = answer(doc, index, c, "w" + std::to_string(t * 10 + i) + "?", gw);
      convs[t] = c;
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& c : convs) {
    CHECK(c.turns.size() == 10);
    CHECK(well_formed(c));
  }
}
