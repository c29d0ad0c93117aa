#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "helpers.hpp"
#include "reground/completion.hpp"
#include "reground/errors.hpp"

using namespace reground;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("reground_test_" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

PromptDoc make_prompt(const std::string& text) {
  PromptDoc doc;
  doc.text = text;
  doc.kind = PromptKind::Grounding;
  doc.inputs_digest = content_digest(text);
  return doc;
}

}  // namespace

TEST_SUITE("completion") {

TEST_CASE("digests are stable and content sensitive") {
  CHECK(content_digest("hello") == content_digest("hello"));
  CHECK(content_digest("hello") != content_digest("hello!"));
  CHECK(content_digest("").size() == 16);
}

TEST_CASE("replay returns recorded responses by digest") {
  TempDir tmp;
  std::string path = (tmp.path / "t.transcript").string();
  PromptDoc prompt = make_prompt("what is in the drawer?");
  Transcript::append(path, {prompt.inputs_digest, prompt.text, "silverware", ""});
  CompletionClient client = CompletionClient::replay(path);
  CHECK(client.complete(prompt) == "silverware");
}

TEST_CASE("replay misses are explicit errors") {
  TempDir tmp;
  std::string path = (tmp.path / "t.transcript").string();
  Transcript::append(path, {"0000000000000000", "p", "r", ""});
  CompletionClient client = CompletionClient::replay(path);
  CHECK_THROWS_AS(client.complete(make_prompt("unrecorded")), ReplayMissError);
}

TEST_CASE("replay requires the transcript to exist") {
  CHECK_THROWS_AS(CompletionClient::replay("/nonexistent/path.transcript"), FormatError);
}

TEST_CASE("editing a prompt invalidates its recording") {
  TempDir tmp;
  std::string path = (tmp.path / "t.transcript").string();
  PromptDoc original = make_prompt("version one");
  Transcript::append(path, {original.inputs_digest, original.text, "answer", ""});
  CompletionClient client = CompletionClient::replay(path);
  CHECK_THROWS_AS(client.complete(make_prompt("version two")), ReplayMissError);
}

TEST_CASE("live endpoint failures surface after retries") {
  TempDir tmp;
  LiveConfig config;
  config.endpoint = "http://127.0.0.1:9";  // discard port; nothing listens
  config.model = "test";
  CompletionClient client =
      CompletionClient::live(config, (tmp.path / "live.transcript").string(), 1, 1);
  CHECK_THROWS_AS(client.complete(make_prompt("hello")), EndpointError);
}

TEST_CASE("fixture transcript replays every recorded variant") {
  CompletionClient client = CompletionClient::replay(reground::testutil::kTranscript);
  Transcript t = Transcript::load(reground::testutil::kTranscript);
  CHECK(t.size() == 10);  // 8 grounding variants + storage + simplify
}

}  // TEST_SUITE
