#pragma once

// Back-and-forth between two chains. With n_0 the start stage of X,
//   f_k : X_{n_{k-1}} -> Y_{m_k},   g_k : Y_{m_k} -> X_{n_k},
// subject to g_k . f_k = inclusion X_{n_{k-1}} -> X_{n_k} and
// f_{k+1} . g_k = inclusion Y_{m_k} -> Y_{m_{k+1}}, as label maps.

#include <optional>
#include <string>
#include <vector>

#include "ubk/approx.hpp"
#include "ubk/fraisse.hpp"

namespace ubk {

enum class BackForthMode { Exact, Epsilon };

struct BackForthTranscript {
  BackForthMode mode = BackForthMode::Exact;
  std::optional<Rational> epsilon;
  std::optional<Rational> delta;
  std::vector<BasedMorphism> f_list;
  std::vector<BasedMorphism> g_list;
  std::vector<std::size_t> n_indices;  // n_0, n_1, ...
  std::vector<std::size_t> m_indices;  // m_1, m_2, ...
  std::vector<DistortionInterval> f_distortion;
  std::vector<DistortionInterval> g_distortion;
};

struct StuckReport {
  std::size_t round = 0;
  std::string direction;  // "forth" (X -> Y) or "back" (Y -> X)
  std::vector<Label> domain;
  std::vector<Label> lambda;
  std::string reason;
};

struct BackForthOutcome {
  BackForthTranscript transcript;
  std::optional<StuckReport> stuck;
};

struct BackForthOptions {
  bool grow = true;  // false: only search the chains as given
  std::size_t search_budget = 200000;
  SpaceLimits limits;
};

/// Both chains start at the trivial space and share K. Round k produces f_k
/// and then g_k.
BackForthOutcome back_and_forth_exact(Chain& x, Chain& y, std::size_t rounds, const BackForthOptions& options = {});

/// f0 maps a stage of x into a stage of y with distortion inside (1/(1+eps), 1+eps).
/// delta is the dyadic rounding of the exact distortion of f0; round k
/// produces g_k and then f_{k+1}, each a certified delta-isometry. Both
/// chains must be 1-based.
BackForthOutcome back_and_forth_epsilon(Chain& x, Chain& y, const BasedMorphism& f0, const Rational& epsilon,
                                        std::size_t rounds, const BackForthOptions& options = {});

/// Re-checks round trips, coherence, index monotonicity (strict when
/// `strict_indices`) and the isometry or delta-isometry certificates.
/// Returns an empty string when everything holds.
std::string check_transcript(const BackForthTranscript& t, const Chain& x, const Chain& y,
                             bool strict_indices = true, const PolytopeLimits& limits = {});

struct EmbedResult {
  std::vector<BasedMorphism> maps;  // X_k (original norm) -> universal chain
  std::vector<DistortionInterval> distortion;
  Rational delta;
  bool renormed = false;
};

/// Coherent embeddings of the stages X_1, X_2, ... of `space_chain` into the
/// growing 1-based chain `universal`. Stages with K > 1 are renormed to be
/// 1-based first; distortions are reported against the original norms.
EmbedResult embed_any(const Chain& space_chain, Chain& universal, const Rational& epsilon,
                      const SpaceLimits& limits = {});

}  // namespace ubk
