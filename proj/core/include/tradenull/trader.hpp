#ifndef TRADENULL_TRADER_HPP
#define TRADENULL_TRADER_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tradenull/matrix.hpp"
#include "tradenull/rng.hpp"

namespace tradenull {

/// How many elements a single pair extraction trades.
///
///  uniform_1_to_n   - trade count t drawn uniformly from {1, .., n}, where n
///                     is the size of the smaller exclusive set; every
///                     extraction with n >= 1 modifies the matrix.
///  shuffle_reassign - the pooled exclusive elements are randomly repartitioned
///                     into two groups of the original sizes; t is then
///                     hypergeometric and 0 is possible.
enum class TradeCountMode { uniform_1_to_n, shuffle_reassign };

struct RandomizerConfig {
    std::int64_t n_extractions = 1000;  // must be >= 1
    TradeCountMode mode = TradeCountMode::uniform_1_to_n;
    std::uint64_t seed = 0;
};

/// Record of one pair extraction. exclusive_* are the pre-trade exclusive
/// sets; moved_* are the traded subsets (each of size t, sorted).
struct TradeOutcome {
    int index_a = -1;
    int index_b = -1;
    std::vector<std::int32_t> exclusive_a;
    std::vector<std::int32_t> exclusive_b;
    std::vector<std::int32_t> moved_a_to_b;
    std::vector<std::int32_t> moved_b_to_a;
    std::int64_t n = 0;  // min(|exclusive_a|, |exclusive_b|)
    std::int64_t t = 0;  // trades performed; 0 iff n == 0 in uniform mode
};

/// (a \ b, b \ a) for sorted duplicate-free lists.
std::pair<std::vector<std::int32_t>, std::vector<std::int32_t>> exclusive_sets(
    std::span<const std::int32_t> a, std::span<const std::int32_t> b);

/// Reusable buffers for the extraction hot loop. After each extraction,
/// moved_ab/moved_ba hold the traded elements (sorted); everything else is
/// scratch with unspecified contents.
struct TradeScratch {
    std::vector<std::int32_t> excl_a;
    std::vector<std::int32_t> excl_b;
    std::vector<std::int32_t> moved_ab;
    std::vector<std::int32_t> moved_ba;
    std::vector<std::int32_t> rebuilt;
};

struct ExtractionResult {
    int index_a = -1;
    int index_b = -1;
    std::int64_t n = 0;
    std::int64_t t = 0;
};

/// One trade between two sorted lists, in place. Allocation-free once the
/// scratch buffers have grown to the working size.
ExtractionResult trade_lists(std::vector<std::int32_t>& a, std::vector<std::int32_t>& b, Rng& rng,
                             TradeCountMode mode, TradeScratch& scratch);

/// One pair extraction on p: two distinct lists drawn uniformly, then a trade.
/// Throws std::invalid_argument if p has fewer than 2 lists (a 1xC or Rx1
/// matrix has a unique configuration).
ExtractionResult extract_pair(PresenceLists& p, Rng& rng, TradeCountMode mode,
                              TradeScratch& scratch);

/// Convenience wrappers that materialize the full TradeOutcome.
TradeOutcome perform_trade(std::vector<std::int32_t>& a, std::vector<std::int32_t>& b, Rng& rng,
                           TradeCountMode mode);
TradeOutcome pair_extraction(PresenceLists& p, Rng& rng, TradeCountMode mode);

/// Conservative default for RandomizerConfig::n_extractions:
/// max(1000, 5 * max(n_rows, n_cols)).
std::int64_t default_extraction_count(const BinaryMatrix& m);

/// Applies cfg.n_extractions pair extractions (no-ops included) to a copy of
/// m and recompiles the matrix. Margins are preserved exactly; the result is
/// a pure function of (m, cfg). A matrix with fewer than 2 presence lists is
/// returned unchanged: it admits no alternative configuration.
BinaryMatrix randomize(const BinaryMatrix& m, const RandomizerConfig& cfg);

/// k independent nulls; null i uses seed mix_seed(cfg.seed, i), so the output
/// sequence does not depend on `threads` or scheduling.
std::vector<BinaryMatrix> batch_randomize(const BinaryMatrix& m, std::int64_t k,
                                          const RandomizerConfig& cfg, int threads = 1);

}  // namespace tradenull

#endif
