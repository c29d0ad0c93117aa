#include "reground/completion.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "reground/errors.hpp"

namespace reground {

using nlohmann::json;

std::string content_digest(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;  // FNV offset basis
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;  // FNV prime
  }
  std::ostringstream out;
  out << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) out << ((hash >> shift) & 0xf);
  return out.str();
}

Transcript Transcript::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open transcript " + path);
  Transcript t;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw FormatError("transcript " + path + " line " + std::to_string(line_no) + ": " +
                        e.what());
    }
    TranscriptEntry e;
    e.digest = j.at("digest").get<std::string>();
    e.prompt = j.value("prompt", "");
    e.response = j.at("response").get<std::string>();
    e.timestamp = j.value("timestamp", "");
    t.entries_[e.digest] = std::move(e);  // later recordings win
  }
  return t;
}

std::optional<std::string> Transcript::find(const std::string& digest) const {
  auto it = entries_.find(digest);
  if (it == entries_.end()) return std::nullopt;
  return it->second.response;
}

void Transcript::append(const std::string& path, const TranscriptEntry& entry) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot append to transcript " + path);
  json j{{"digest", entry.digest},
         {"prompt", entry.prompt},
         {"response", entry.response},
         {"timestamp", entry.timestamp}};
  out << j.dump() << "\n";
}

CompletionClient CompletionClient::replay(const std::string& transcript_path) {
  CompletionClient c;
  c.replay_ = true;
  c.transcript_path_ = transcript_path;
  c.transcript_ = Transcript::load(transcript_path);
  return c;
}

CompletionClient CompletionClient::live(const LiveConfig& config,
                                        const std::string& transcript_path, int retries,
                                        int timeout_seconds) {
  if (config.endpoint.empty()) throw Error("live mode requires an endpoint");
  CompletionClient c;
  c.replay_ = false;
  c.transcript_path_ = transcript_path;
  c.live_ = config;
  c.retries_ = retries;
  c.timeout_seconds_ = timeout_seconds;
  return c;
}

namespace {

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

std::string CompletionClient::complete(const PromptDoc& prompt) const {
  if (replay_) {
    auto response = transcript_.find(prompt.inputs_digest);
    if (!response)
      throw ReplayMissError("transcript " + transcript_path_ + " has no entry for digest " +
                            prompt.inputs_digest);
    return *response;
  }

  json body{{"model", live_.model},
            {"temperature", live_.temperature},
            {"messages", json::array({json{{"role", "user"}, {"content", prompt.text}}})}};
  std::string payload = body.dump();

  std::string last_error;
  for (int attempt = 0; attempt <= retries_; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(250 * (1 << (attempt - 1))));
    httplib::Client http(live_.endpoint);
    http.set_connection_timeout(timeout_seconds_, 0);
    http.set_read_timeout(timeout_seconds_, 0);
    httplib::Headers headers;
    if (!live_.api_key.empty())
      headers.emplace("Authorization", "Bearer " + live_.api_key);
    auto res = http.Post(live_.path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    json reply;
    try {
      reply = json::parse(res->body);
    } catch (const json::exception& e) {
      last_error = std::string("bad response body: ") + e.what();
      continue;
    }
    if (!reply.contains("choices") || reply["choices"].empty() ||
        !reply["choices"][0].contains("message")) {
      last_error = "response missing choices[0].message";
      continue;
    }
    std::string text = reply["choices"][0]["message"].value("content", "");
    if (!transcript_path_.empty()) {
      std::lock_guard<std::mutex> lock(*append_mutex_);
      Transcript::append(transcript_path_,
                         {prompt.inputs_digest, prompt.text, text, utc_timestamp()});
    }
    return text;
  }
  throw EndpointError("endpoint " + live_.endpoint + " failed after " +
                      std::to_string(retries_ + 1) + " attempts: " + last_error);
}

LiveConfig load_live_config(const std::string& path) {
  LiveConfig config;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open config " + path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw FormatError(std::string("malformed config: ") + e.what());
    }
    config.endpoint = j.value("endpoint", "");
    config.path = j.value("path", config.path);
    config.model = j.value("model", "");
    config.temperature = j.value("temperature", 0.0);
    if (j.contains("api_key")) config.api_key = j["api_key"].get<std::string>();
    if (j.contains("api_key_env")) {
      const char* v = std::getenv(j["api_key_env"].get<std::string>().c_str());
      if (v) config.api_key = v;
    }
  }
  if (const char* v = std::getenv("REGROUND_ENDPOINT")) config.endpoint = v;
  if (const char* v = std::getenv("REGROUND_MODEL")) config.model = v;
  if (const char* v = std::getenv("REGROUND_API_KEY")) config.api_key = v;
  return config;
}

}  // namespace reground
