#pragma once

#include "hanabench/llm_client.hpp"

namespace hanabench {

// A deterministic stand-in for a chat model. It reads the turn prompt the way
// a real model would (state dictionary, hinted-player addendum), plays a
// simple convention policy, and answers with chain-of-thought text followed
// by the schema JSON, including rationale/ToM statements on hints. Runs the
// whole prompt -> parse -> act path with no network.
MockChatClient::Handler make_mock_player_handler();

// Deterministic judge stand-in: scores the rubric prompt's two statements by
// word overlap (Jaccard x10, rounded), so identical texts score 10 and
// unrelated texts score 0.
MockChatClient::Handler make_mock_judge_handler();

}  // namespace hanabench
