// Copyright 2026 The smartgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "smartgen/generators.hpp"
#include "smartgen/llm.hpp"

using namespace smartgen;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("smartgen_llm_" + name);
  fs::remove_all(p);
  return p;
}

struct Fixture {
  int puzzle;
  std::string label;
  std::array<std::string, 5> options;
  std::string text;
};

std::vector<Fixture> load_fixtures() {
  std::ifstream in(std::string(SMARTGEN_FIXTURE_DIR) + "/llm_transcripts.jsonl");
  std::vector<Fixture> out;
  std::string line;
  while (std::getline(in, line)) {
    const json j = json::parse(line);
    Fixture f;
    f.puzzle = j.at("puzzle").get<int>();
    f.label = j.at("label").get<std::string>();
    const auto opts = j.at("options").get<std::vector<std::string>>();
    std::copy(opts.begin(), opts.end(), f.options.begin());
    f.text = j.at("text").get<std::string>();
    out.push_back(f);
  }
  return out;
}

InstanceRecord reference_record(int root_id) {
  for (const ReferenceWordProblem& p : reference_word_problems()) {
    if (p.spec.root_id == root_id) return record_from_instance(p.instance);
  }
  throw LookupError("no reference puzzle " + std::to_string(root_id));
}

RootPuzzleSpec reference_spec(int root_id) {
  for (const ReferenceWordProblem& p : reference_word_problems()) {
    if (p.spec.root_id == root_id) return p.spec;
  }
  throw LookupError("no reference puzzle " + std::to_string(root_id));
}

class ScriptedClient : public ChatClient {
 public:
  explicit ScriptedClient(std::function<ChatExchange(int)> fn) : fn_(std::move(fn)) {}
  ChatExchange complete(const std::string& prompt) override {
    last_prompt = prompt;
    return fn_(calls++);
  }
  std::atomic<int> calls{0};
  std::string last_prompt;

 private:
  std::function<ChatExchange(int)> fn_;
};

EndpointConfig fast_config() {
  EndpointConfig c;
  c.base_url = "http://127.0.0.1:1";
  c.model = "test-model";
  c.max_retries = 2;
  c.max_concurrency = 3;
  c.backoff_ms = 1.0;
  return c;
}

}  // namespace

TEST_CASE("prompt for the trade-chain puzzle") {
  const std::string prompt = build_prompt(reference_record(7), reference_spec(7));
  CHECK(prompt ==
        "Please read the following question, select the correct answer from one of the options, and provide the "
        "reasoning process.\n\nQuestion:\nIn the country of jewelries, you can trade three sapphires for one ruby. "
        "For one sapphire, you can get two flowers. How many flowers can you get for two rubies?\nOptions:\n"
        "A: 6, B: 8, C: 10, D: 12, E: 14");
  CHECK(build_prompt(reference_record(7), reference_spec(7)) == prompt);
}

TEST_CASE("prompt refuses image puzzles") {
  const Registry reg = default_registry();
  const PuzzleInstance inst = generate_instance(reg, 1, 1, 1);
  CHECK_THROWS_AS(build_prompt(record_from_instance(inst), reg.spec(1)), ProtocolError);
}

TEST_CASE("prompt leaks neither answer nor scene") {
  const Registry reg = default_registry();
  for (int i = 1; i <= 20; ++i) {
    const InstanceRecord r = record_from_instance(generate_instance(reg, 5, 11, i));
    const std::string prompt = build_prompt(r, reg.spec(11));
    CHECK(prompt.find("svg") == std::string::npos);
    CHECK(prompt.find("answer_index") == std::string::npos);
    CHECK(prompt.find("correct answer is") == std::string::npos);
  }
}

TEST_CASE("parse_choice examples") {
  const std::array<std::string, 5> seven = {"6", "8", "10", "12", "14"};
  CHECK(parse_choice("The correct answer is **D: 12**. Here's the reasoning...", seven) == 3);
  const std::array<std::string, 5> ninety = {"1", "8", "7", "6", "2"};
  CHECK(parse_choice("...we find that d = $\\boxed{\\textbf{(B)}\\ 8}$.", ninety) == 1);
  CHECK(parse_choice("I cannot determine the answer.", seven) == kOther);
  CHECK(parse_choice("", seven) == kOther);
  CHECK(parse_choice("The answer is B. Wait, no: the answer is C.", seven) == 2);
  CHECK(parse_choice("The correct answer is 14.", seven) == 4);
  CHECK(parse_choice("So in total you get 12 flowers.", seven) == 3);
  CHECK(parse_choice("It is either 8 or 10.", seven) == kOther);
  CHECK(parse_choice("Roughly 12.5 flowers.", seven) == kOther);
  const std::array<std::string, 5> words = {"5", "8", "10", "12", "never"};
  CHECK(parse_choice("The correct answer is: never.", words) == 4);
  const std::array<std::string, 5> km = {"7 km", "9 km", "11 km", "16 km", "18 km"};
  CHECK(parse_choice("The road is 7 + 11 = 18 km long.", km) == kOther);  // 7, 11 and 18 all named
  CHECK(parse_choice("The road is 18 km long.", km) == 4);
}

TEST_CASE("parse_choice is idempotent") {
  for (const Fixture& f : load_fixtures()) {
    CHECK(parse_choice(f.text, f.options) == parse_choice(f.text, f.options));
  }
}

TEST_CASE("parser accuracy on the transcript corpus") {
  const auto fixtures = load_fixtures();
  REQUIRE(fixtures.size() >= 40);
  std::size_t correct = 0;
  for (const Fixture& f : fixtures) {
    const std::string got = choice_name(parse_choice(f.text, f.options));
    if (got == f.label) ++correct;
    else MESSAGE("puzzle " << f.puzzle << ": expected " << f.label << ", parsed " << got);
  }
  CHECK(static_cast<double>(correct) / static_cast<double>(fixtures.size()) >= 0.95);
}

TEST_CASE("run_trials with a scripted endpoint") {
  const fs::path dir = scratch("scripted");
  ScriptedClient client([](int) { return ChatExchange{"{}", "{}", "The answer is **D: 12**."}; });
  const auto trials = run_trials(client, fast_config(), reference_record(7), reference_spec(7), 10, dir);
  REQUIRE(trials.size() == 10);
  CHECK(client.calls == 10);
  for (std::size_t i = 0; i < trials.size(); ++i) {
    CHECK(trials[i].trial == static_cast<int>(i) + 1);
    CHECK(trials[i].choice == 3);
    CHECK_FALSE(trials[i].failed);
    CHECK(fs::exists(dir / transcript_file_name(7, 1, trials[i].trial)));
  }
  CHECK(client.last_prompt == build_prompt(reference_record(7), reference_spec(7)));

  Dataset d;
  d.roots = {reference_spec(7)};
  d.records = {reference_record(7)};
  const auto replayed = replay_transcripts(dir, d);
  REQUIRE(replayed.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(replayed[i].choice == trials[i].choice);
    CHECK(replayed[i].raw == trials[i].raw);
  }
}

TEST_CASE("run_trials single trial and bad n") {
  const fs::path dir = scratch("single");
  ScriptedClient client([](int) { return ChatExchange{"", "", "(A)"}; });
  CHECK(run_trials(client, fast_config(), reference_record(9), reference_spec(9), 1, dir).size() == 1);
  CHECK_THROWS_AS(run_trials(client, fast_config(), reference_record(9), reference_spec(9), 0, dir), PreconditionError);
}

TEST_CASE("failing endpoint flags every trial") {
  const fs::path dir = scratch("failing");
  ScriptedClient client([](int) -> ChatExchange { throw TransportError("connection refused", true); });
  const auto trials = run_trials(client, fast_config(), reference_record(7), reference_spec(7), 10, dir);
  REQUIRE(trials.size() == 10);
  CHECK(client.calls == 30);  // 1 + 2 retries each
  for (const TrialRecord& t : trials) {
    CHECK(t.failed);
    CHECK(t.choice == kOther);
  }
  std::map<InstanceKey, int> answers{{{7, 1}, 3}};
  const LlmSummary s = aggregate_llm(trials, answers);
  CHECK(s.failed == 10);
  CHECK(s.roots.at(0).frequency == std::array<std::size_t, 6>{0, 0, 0, 0, 0, 10});
  CHECK(s.roots.at(0).accuracy == 0.0);
}

TEST_CASE("non-retryable errors are not retried") {
  const fs::path dir = scratch("fatal");
  ScriptedClient client([](int) -> ChatExchange { throw TransportError("HTTP 401", false); });
  const auto trials = run_trials(client, fast_config(), reference_record(7), reference_spec(7), 2, dir);
  CHECK(client.calls == 2);
  CHECK(trials[0].failed);
}

TEST_CASE("aggregate_llm accuracy and std") {
  std::vector<TrialRecord> trials;
  const int choices[10] = {3, 3, 3, 3, 3, 3, 3, 2, 2, 1};  // 7 correct
  for (int i = 0; i < 10; ++i) trials.push_back({7, 1, i + 1, "", choices[i], 1.0, false, ""});
  const LlmSummary s = aggregate_llm(trials, {{{7, 1}, 3}});
  REQUIRE(s.roots.size() == 1);
  CHECK(s.roots[0].accuracy == doctest::Approx(70.0));
  CHECK(s.roots[0].frequency == std::array<std::size_t, 6>{0, 1, 2, 7, 0, 0});
  CHECK(s.roots[0].std == doctest::Approx(2.49).epsilon(0.002));
  CHECK(s.mean_accuracy == doctest::Approx(70.0));
  CHECK_THROWS_AS(aggregate_llm(trials, {}), PreconditionError);
}

TEST_CASE("per-root frequencies sum to the trial count") {
  Rng rng(3);
  std::vector<TrialRecord> trials;
  for (int root : {7, 9, 30}) {
    for (int t = 1; t <= 10; ++t) trials.push_back({root, 1, t, "", static_cast<int>(rng.index(6)), 0, false, ""});
  }
  const LlmSummary s = aggregate_llm(trials, {{{7, 1}, 0}, {{9, 1}, 1}, {{30, 1}, 2}});
  for (const LlmRootSummary& r : s.roots) {
    std::size_t sum = 0;
    for (std::size_t c : r.frequency) sum += c;
    CHECK(sum == 10);
  }
}

TEST_CASE("http client against a local endpoint") {
  httplib::Server server;
  std::atomic<int> hits{0};
  std::string seen_auth, seen_body;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    if (hits++ == 0) {
      res.status = 503;
      res.set_content("busy", "text/plain");
      return;
    }
    seen_auth = req.get_header_value("Authorization");
    seen_body = req.body;
    const json reply = {{"choices", json::array({{{"message", {{"role", "assistant"}, {"content", "The answer is C."}}}}})}};
    res.set_content(reply.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ::setenv("SMARTGEN_TEST_TOKEN", "secret", 1);
  EndpointConfig c = fast_config();
  c.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1/";
  c.token_env = "SMARTGEN_TEST_TOKEN";
  c.temperature = 0.5;
  c.max_concurrency = 1;
  HttpChatClient client(c);
  const fs::path dir = scratch("http");
  const auto trials = run_trials(client, c, reference_record(9), reference_spec(9), 2, dir);
  server.stop();
  th.join();

  REQUIRE(trials.size() == 2);
  CHECK(trials[0].choice == 2);
  CHECK_FALSE(trials[0].failed);
  CHECK(hits == 3);
  CHECK(seen_auth == "Bearer secret");
  const json body = json::parse(seen_body);
  CHECK(body.at("model") == "test-model");
  CHECK(body.at("messages").size() == 1);
  CHECK(body.at("temperature") == 0.5);
  std::ifstream f(dir / transcript_file_name(9, 1, 1));
  const json transcript = json::parse(f);
  CHECK(transcript.at("attempts").size() == 2);
  CHECK(transcript.at("raw") == "The answer is C.");
}

TEST_CASE("endpoint config validation") {
  EndpointConfig c = fast_config();
  c.max_concurrency = 0;
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c = fast_config();
  c.max_retries = -1;
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c = fast_config();
  c.base_url = "ftp://x";
  CHECK_THROWS_AS(HttpChatClient{c}, PreconditionError);
}
