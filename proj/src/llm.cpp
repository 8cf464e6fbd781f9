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

#include "smartgen/llm.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "httplib.h"

namespace smartgen {

namespace fs = std::filesystem;

std::string choice_name(int choice) {
  if (choice >= 0 && choice < kNumOptions) return option_letter(choice);
  return "OTHER";
}

int parse_choice_name(std::string_view name) {
  if (name == "OTHER") return kOther;
  const int i = option_index(name);
  if (i < 0) throw ParseError(0, "unknown choice '" + std::string(name) + "'");
  return i;
}

std::string build_prompt(const InstanceRecord& record, const RootPuzzleSpec& spec) {
  if (spec.needs_image) {
    throw ProtocolError("root puzzle " + std::to_string(spec.root_id) + " needs its image; only text puzzles can be sent");
  }
  std::string out =
      "Please read the following question, select the correct answer from one of the options, and provide the "
      "reasoning process.\n\nQuestion:\n";
  out += record.question;
  out += "\nOptions:\n";
  for (int i = 0; i < kNumOptions; ++i) {
    if (i) out += ", ";
    out += option_letter(i) + ": " + record.options[static_cast<std::size_t>(i)];
  }
  return out;
}

// ---- answer extraction -----------------------------------------------------

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Leading integer of a numeric option ("18 km" -> "18"), empty for words.
std::string numeric_part(const std::string& option) {
  std::size_t i = 0;
  if (i < option.size() && option[i] == '-') ++i;
  const std::size_t start = i;
  while (i < option.size() && is_digit(option[i])) ++i;
  if (i == start) return {};
  if (i != option.size() && option[i] != ' ') return {};
  return option.substr(0, i);
}

// Does option `o` occur at text[pos] as a whole token?
bool value_at(std::string_view text, std::size_t pos, const std::string& option) {
  if (pos > 0 && (is_alnum(text[pos - 1]) || text[pos - 1] == '.')) return false;
  const std::string num = numeric_part(option);
  if (!num.empty()) {
    if (text.substr(pos, num.size()) != num) return false;
    const std::size_t end = pos + num.size();
    if (end < text.size() && is_digit(text[end])) return false;
    // 18.36 is not 18
    if (end + 1 < text.size() && (text[end] == '.' || text[end] == ',') && is_digit(text[end + 1])) return false;
    return true;
  }
  if (pos + option.size() > text.size()) return false;
  for (std::size_t k = 0; k < option.size(); ++k) {
    if (std::tolower(static_cast<unsigned char>(text[pos + k])) != std::tolower(static_cast<unsigned char>(option[k]))) {
      return false;
    }
  }
  const std::size_t end = pos + option.size();
  return end >= text.size() || !is_alnum(text[end]);
}

int option_at(std::string_view text, std::size_t pos, const std::array<std::string, 5>& options) {
  for (int i = 0; i < kNumOptions; ++i) {
    if (value_at(text, pos, options[static_cast<std::size_t>(i)])) return i;
  }
  return -1;
}

std::size_t skip_decoration(std::string_view text, std::size_t pos) {
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '*' || text[pos] == '$' || text[pos] == '`')) ++pos;
  return pos;
}

struct Hit {
  std::size_t pos;
  int choice;
};

const std::vector<std::regex>& letter_patterns() {
  static const std::vector<std::regex> patterns = {
      std::regex(R"([Aa]nswer(?:\s+is|\s*:)\s*[:\s]*(?:\*\*)?\s*(?:[Oo]ption\s+)?\(?([A-E])(?![A-Za-z0-9]))"),
      std::regex(R"([Oo]ption\s+\(?([A-E])(?![A-Za-z0-9]))"),
      std::regex(R"(\(([A-E])\))"),
      std::regex(R"(\\boxed\{\s*([A-E])\s*\})"),
  };
  return patterns;
}

// "D: 12", "B. 8 flowers", "A, 9": a letter followed by its own option value.
void letter_value_hits(std::string_view text, const std::array<std::string, 5>& options, std::vector<Hit>& hits) {
  for (std::size_t p = 0; p + 1 < text.size(); ++p) {
    const int letter = option_index(text.substr(p, 1));
    if (letter < 0 || (p > 0 && is_alnum(text[p - 1]))) continue;
    const char sep = text[p + 1];
    if (sep != ':' && sep != '.' && sep != ',') continue;
    const std::size_t v = skip_decoration(text, p + 2);
    if (v < text.size() && value_at(text, v, options[static_cast<std::size_t>(letter)])) hits.push_back({p, letter});
  }
}

int explicit_letter(std::string_view text, const std::array<std::string, 5>& options) {
  std::vector<Hit> hits;
  const std::string s(text);
  for (const std::regex& re : letter_patterns()) {
    for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it) {
      hits.push_back({static_cast<std::size_t>(it->position(1)), option_index(it->str(1))});
    }
  }
  letter_value_hits(text, options, hits);
  if (hits.empty()) return -1;
  return std::max_element(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.pos < b.pos; })->choice;
}

// "The correct answer is 14." names a value instead of a letter.
int stated_value(std::string_view text, const std::array<std::string, 5>& options) {
  static const std::regex re(R"([Aa]nswer(?:\s+is|\s+would\s+be|\s+will\s+be|\s*:)\s*:?\s*)");
  const std::string s(text);
  int found = -1;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it) {
    const std::size_t pos = skip_decoration(text, static_cast<std::size_t>(it->position(0) + it->length(0)));
    const int i = option_at(text, pos, options);
    if (i >= 0) found = i;
  }
  return found;
}

std::vector<std::string_view> sentences(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t p = 0; p < text.size(); ++p) {
    const char c = text[p];
    const bool end_mark = (c == '.' || c == '!' || c == '?') && (p + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[p + 1])));
    if (c == '\n' || end_mark) {
      if (p > start) out.push_back(text.substr(start, p - start));
      start = p + 1;
    }
  }
  if (start < text.size()) out.push_back(text.substr(start));
  return out;
}

// Options named in the last sentence that names any; unique or nothing.
int final_sentence_value(std::string_view text, const std::array<std::string, 5>& options) {
  const auto parts = sentences(text);
  for (auto s = parts.rbegin(); s != parts.rend(); ++s) {
    std::set<int> seen;
    for (std::size_t p = 0; p < s->size(); ++p) {
      const int i = option_at(*s, p, options);
      if (i >= 0) seen.insert(i);
    }
    if (seen.size() == 1) return *seen.begin();
    if (!seen.empty()) return -1;
  }
  return -1;
}

}  // namespace

int parse_choice(std::string_view text, const std::array<std::string, 5>& options) {
  if (int c = explicit_letter(text, options); c >= 0) return c;
  if (int c = stated_value(text, options); c >= 0) return c;
  if (int c = final_sentence_value(text, options); c >= 0) return c;
  return kOther;
}

// ---- endpoint --------------------------------------------------------------

void EndpointConfig::validate() const {
  if (base_url.empty()) throw PreconditionError("endpoint base URL is empty");
  if (model.empty()) throw PreconditionError("endpoint model is empty");
  if (max_retries < 0) throw PreconditionError("max retries must be >= 0");
  if (max_concurrency < 1) throw PreconditionError("max concurrency must be >= 1");
  if (timeout_s <= 0) throw PreconditionError("timeout must be positive");
  if (backoff_ms < 0) throw PreconditionError("backoff must be >= 0");
}

bool https_supported() {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
  return true;
#else
  return false;
#endif
}

HttpChatClient::HttpChatClient(EndpointConfig config) : config_(std::move(config)) {
  config_.validate();
  static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.base_url, m, url)) {
    throw PreconditionError("endpoint URL must look like http(s)://host[:port][/path]: " + config_.base_url);
  }
  origin_ = m[1];
  path_ = m[2];
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  if (origin_.rfind("https", 0) == 0 && !https_supported()) {
    throw PreconditionError("this build has no TLS support; use an http:// endpoint");
  }
  if (!config_.token_env.empty()) {
    if (const char* t = std::getenv(config_.token_env.c_str())) token_ = t;
  }
}

ChatExchange HttpChatClient::complete(const std::string& prompt) {
  ordered_json body;
  body["model"] = config_.model;
  body["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});
  if (config_.temperature) body["temperature"] = *config_.temperature;
  ChatExchange ex;
  ex.request_body = body.dump();

  httplib::Client client(origin_);
  const auto secs = static_cast<time_t>(std::ceil(config_.timeout_s));
  client.set_connection_timeout(secs);
  client.set_read_timeout(secs);
  client.set_write_timeout(secs);
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

  const auto res = client.Post(path_ + "/chat/completions", headers, ex.request_body, "application/json");
  if (!res) throw TransportError("request failed: " + httplib::to_string(res.error()), true);
  ex.response_body = res->body;
  if (res->status != 200) {
    const bool retryable = res->status == 429 || res->status >= 500;
    throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200), retryable);
  }
  try {
    const json j = json::parse(res->body);
    ex.content = j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed response: ") + e.what(), false);
  }
  return ex;
}

// ---- trials ----------------------------------------------------------------

std::string transcript_file_name(int root_id, int instance_id, int trial) {
  return "root_" + std::to_string(root_id) + "_instance_" + std::to_string(instance_id) + "_trial_" +
         std::to_string(trial) + ".json";
}

std::vector<TrialRecord> run_trials(ChatClient& client, const EndpointConfig& config, const InstanceRecord& record,
                                    const RootPuzzleSpec& spec, int n, const fs::path& transcript_dir) {
  config.validate();
  if (n < 1) throw PreconditionError("trial count must be >= 1");
  const std::string prompt = build_prompt(record, spec);
  std::error_code ec;
  fs::create_directories(transcript_dir, ec);
  if (ec) throw IntegrityError("cannot create " + transcript_dir.string() + ": " + ec.message());

  std::vector<TrialRecord> out(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto one = [&](int t) {
    TrialRecord r;
    r.root_id = record.root_id;
    r.instance_id = record.instance_id;
    r.trial = t + 1;
    ordered_json transcript;
    transcript["root_id"] = r.root_id;
    transcript["instance_id"] = r.instance_id;
    transcript["trial"] = r.trial;
    transcript["model"] = config.model;
    transcript["prompt"] = prompt;
    transcript["attempts"] = ordered_json::array();
    for (int attempt = 0;; ++attempt) {
      const auto start = std::chrono::steady_clock::now();
      ordered_json a;
      try {
        ChatExchange ex = client.complete(prompt);
        r.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        a["request"] = ex.request_body;
        a["response"] = ex.response_body;
        a["latency_ms"] = r.latency_ms;
        transcript["attempts"].push_back(a);
        r.raw = std::move(ex.content);
        break;
      } catch (const TransportError& e) {
        a["error"] = e.what();
        transcript["attempts"].push_back(a);
        r.error = e.what();
        if (!e.retryable() || attempt >= config.max_retries) {
          r.failed = true;
          break;
        }
      }
      const double delay = config.backoff_ms * std::pow(2.0, attempt);
      std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(delay));
    }
    transcript["raw"] = r.raw;
    transcript["latency_ms"] = r.latency_ms;
    transcript["failed"] = r.failed;
    transcript["error"] = r.error;
    {
      std::ofstream f(transcript_dir / transcript_file_name(r.root_id, r.instance_id, r.trial), std::ios::binary);
      f << transcript.dump(2) << '\n';
      if (!f) throw IntegrityError("cannot write transcript in " + transcript_dir.string());
    }
    r.choice = r.failed ? kOther : parse_choice(r.raw, record.options);
    out[static_cast<std::size_t>(t)] = std::move(r);
  };
  auto work = [&] {
    for (int t = next++; t < n; t = next++) {
      try {
        one(t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  const int workers = std::min(n, config.max_concurrency);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<TrialRecord> replay_transcripts(const fs::path& dir, const Dataset& dataset) {
  std::map<InstanceKey, const InstanceRecord*> index;
  for (const InstanceRecord& r : dataset.records) index[{r.root_id, r.instance_id}] = &r;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::vector<TrialRecord> out;
  for (const fs::path& file : files) {
    std::ifstream in(file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError(0, file.string() + ": " + e.what());
    }
    TrialRecord r;
    r.root_id = j.at("root_id").get<int>();
    r.instance_id = j.at("instance_id").get<int>();
    r.trial = j.at("trial").get<int>();
    r.raw = j.value("raw", "");
    r.latency_ms = j.value("latency_ms", 0.0);
    r.failed = j.value("failed", false);
    r.error = j.value("error", "");
    const auto it = index.find({r.root_id, r.instance_id});
    if (it == index.end()) throw IntegrityError(file.string() + ": instance not in the dataset");
    r.choice = r.failed ? kOther : parse_choice(r.raw, it->second->options);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tie(a.root_id, a.instance_id, a.trial) < std::tie(b.root_id, b.instance_id, b.trial);
  });
  return out;
}

LlmSummary aggregate_llm(const std::vector<TrialRecord>& trials, const std::map<InstanceKey, int>& answers) {
  std::map<int, LlmRootSummary> by_root;
  for (const TrialRecord& t : trials) {
    const auto it = answers.find({t.root_id, t.instance_id});
    if (it == answers.end()) {
      throw PreconditionError("no answer for (" + std::to_string(t.root_id) + ", " + std::to_string(t.instance_id) + ")");
    }
    if (t.choice < 0 || t.choice > kOther) throw PreconditionError("trial has no parsed choice");
    LlmRootSummary& s = by_root[t.root_id];
    s.root_id = t.root_id;
    ++s.trials;
    s.correct += t.choice == it->second;
    s.failed += t.failed;
    ++s.frequency[static_cast<std::size_t>(t.choice)];
  }
  LlmSummary out;
  for (auto& [_, s] : by_root) {
    s.accuracy = 100.0 * static_cast<double>(s.correct) / static_cast<double>(s.trials);
    std::array<double, 6> f{};
    for (std::size_t i = 0; i < 6; ++i) f[i] = static_cast<double>(s.frequency[i]);
    s.std = answer_freq_std(f);
    out.mean_accuracy += s.accuracy;
    out.mean_std += s.std;
    out.failed += s.failed;
    out.roots.push_back(s);
  }
  if (!out.roots.empty()) {
    out.mean_accuracy /= static_cast<double>(out.roots.size());
    out.mean_std /= static_cast<double>(out.roots.size());
  }
  return out;
}

std::string format_llm_summary(const LlmSummary& summary, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Records) {
    for (const LlmRootSummary& s : summary.roots) {
      ordered_json j;
      j["level"] = "root";
      j["root_id"] = s.root_id;
      j["trials"] = s.trials;
      j["correct"] = s.correct;
      j["failed"] = s.failed;
      j["accuracy"] = s.accuracy;
      for (int i = 0; i <= kOther; ++i) j[choice_name(i)] = s.frequency[static_cast<std::size_t>(i)];
      j["std"] = s.std;
      out += j.dump() + "\n";
    }
    ordered_json m;
    m["level"] = "mean";
    m["accuracy"] = summary.mean_accuracy;
    m["std"] = summary.mean_std;
    m["failed"] = summary.failed;
    out += m.dump() + "\n";
    return out;
  }
  char line[200];
  std::snprintf(line, sizeof line, "%-6s %6s %8s %4s %4s %4s %4s %4s %6s %7s %6s\n", "root", "trials", "accuracy",
                "A", "B", "C", "D", "E", "OTHER", "std", "failed");
  out += line;
  for (const LlmRootSummary& s : summary.roots) {
    std::snprintf(line, sizeof line, "%-6d %6zu %8.1f %4zu %4zu %4zu %4zu %4zu %6zu %7.2f %6zu\n", s.root_id, s.trials,
                  s.accuracy, s.frequency[0], s.frequency[1], s.frequency[2], s.frequency[3], s.frequency[4],
                  s.frequency[5], s.std, s.failed);
    out += line;
  }
  std::snprintf(line, sizeof line, "%-6s %6s %8.1f %34s %7.2f %6zu\n", "mean", "", summary.mean_accuracy, "",
                summary.mean_std, summary.failed);
  out += line;
  return out;
}

}  // namespace smartgen
