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

#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smartgen/dataset.hpp"
#include "smartgen/errors.hpp"
#include "smartgen/eval.hpp"

namespace smartgen {

// Parsed answers: 0..4 for A..E, kOther when nothing could be extracted.
inline constexpr int kOther = 5;
std::string choice_name(int choice);  // "A".."E", "OTHER"
int parse_choice_name(std::string_view name);

// Throws ProtocolError for puzzles that need their image.
std::string build_prompt(const InstanceRecord& record, const RootPuzzleSpec& spec);

// Explicit letter statements first ("answer is D", "**D: 12**", "(B)",
// "\boxed{\textbf{(C)} ...}", "option E"), the last one winning; then an
// "answer is <value>" statement; then a unique option value in the last
// sentence that mentions one. Otherwise kOther.
int parse_choice(std::string_view text, const std::array<std::string, 5>& options);

struct TrialRecord {
  int root_id = 0;
  int instance_id = 0;
  int trial = 0;
  std::string raw;
  int choice = kOther;
  double latency_ms = 0.0;
  bool failed = false;
  std::string error;  // last transport error of a failed trial
};

struct EndpointConfig {
  std::string base_url;  // e.g. https://api.openai.com/v1
  std::string model;
  std::string token_env = "SMARTGEN_API_TOKEN";
  std::optional<double> temperature;  // endpoint default when unset
  double timeout_s = 120.0;
  int max_retries = 3;
  int max_concurrency = 4;
  double backoff_ms = 1000.0;  // first retry delay; doubles per attempt

  void validate() const;  // throws PreconditionError
};

// A transport failure. Retryable ones (network errors, 429, 5xx) are retried
// with exponential backoff.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, bool retryable) : Error(what), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

struct ChatExchange {
  std::string request_body;
  std::string response_body;
  std::string content;  // assistant message text
};

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // One stateless single-turn request. Throws TransportError.
  virtual ChatExchange complete(const std::string& prompt) = 0;
};

// OpenAI-style POST <base_url>/chat/completions with a bearer token read from
// the configured environment variable.
class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(EndpointConfig config);
  ChatExchange complete(const std::string& prompt) override;

 private:
  EndpointConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // path prefix of base_url
  std::string token_;
};

bool https_supported();

std::string transcript_file_name(int root_id, int instance_id, int trial);

// Sends the prompt n times, at most max_concurrency at once. Each trial's
// request and response are written to `transcript_dir` before parsing. Trials
// that exhaust their retries are flagged failed with choice kOther.
std::vector<TrialRecord> run_trials(ChatClient& client, const EndpointConfig& config,
                                    const InstanceRecord& record, const RootPuzzleSpec& spec, int n,
                                    const std::filesystem::path& transcript_dir);

// Re-parses every transcript in `dir` against the dataset's options.
std::vector<TrialRecord> replay_transcripts(const std::filesystem::path& dir, const Dataset& dataset);

struct LlmRootSummary {
  int root_id = 0;
  std::size_t trials = 0;
  std::size_t correct = 0;
  std::size_t failed = 0;
  double accuracy = 0.0;                  // percent
  std::array<std::size_t, 6> frequency{};  // A..E, OTHER
  double std = 0.0;
};

struct LlmSummary {
  std::vector<LlmRootSummary> roots;
  double mean_accuracy = 0.0;
  double mean_std = 0.0;
  std::size_t failed = 0;
};

// `answers` maps each probed instance to its correct option index.
LlmSummary aggregate_llm(const std::vector<TrialRecord>& trials,
                         const std::map<InstanceKey, int>& answers);

std::string format_llm_summary(const LlmSummary& summary, ReportFormat format);

}  // namespace smartgen
