#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "reground/prompts.hpp"

namespace reground {

// 64-bit FNV-1a of the text, as 16 hex digits. Keys replay transcripts, so
// editing a prompt invalidates stale recordings loudly.
std::string content_digest(const std::string& text);

struct TranscriptEntry {
  std::string digest;
  std::string prompt;
  std::string response;
  std::string timestamp;  // ISO-8601 UTC, empty for seeded fixtures
};

// Append-only JSONL file of (digest, prompt, response, timestamp).
class Transcript {
 public:
  Transcript() = default;
  static Transcript load(const std::string& path);

  std::optional<std::string> find(const std::string& digest) const;
  std::size_t size() const { return entries_.size(); }

  static void append(const std::string& path, const TranscriptEntry& entry);

 private:
  std::map<std::string, TranscriptEntry> entries_;
};

struct LiveConfig {
  std::string endpoint;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key;
  double temperature = 0.0;
};

// Either replays a recorded transcript byte-for-byte or talks to an
// OpenAI-compatible chat-completion endpoint, persisting every live
// response for later replay.
class CompletionClient {
 public:
  static CompletionClient replay(const std::string& transcript_path);
  static CompletionClient live(const LiveConfig& config, const std::string& transcript_path,
                               int retries = 2, int timeout_seconds = 30);

  bool is_replay() const { return replay_; }
  const std::string& transcript_path() const { return transcript_path_; }

  std::string complete(const PromptDoc& prompt) const;

 private:
  CompletionClient() = default;

  bool replay_ = true;
  std::string transcript_path_;
  Transcript transcript_;
  LiveConfig live_;
  int retries_ = 2;
  int timeout_seconds_ = 30;
  std::shared_ptr<std::mutex> append_mutex_ = std::make_shared<std::mutex>();
};

// Loads endpoint configuration from a JSON file, then applies
// REGROUND_ENDPOINT / REGROUND_MODEL / REGROUND_API_KEY overrides.
LiveConfig load_live_config(const std::string& path);

}  // namespace reground
