#include "tradenull/trader.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <thread>

namespace tradenull {

namespace {

#ifndef NDEBUG
bool strictly_increasing(const std::vector<std::int32_t>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] <= v[i - 1]) return false;
    return true;
}
#endif

// Splits sorted a, b into a \ b and b \ a by a single merge scan.
void split_exclusive(std::span<const std::int32_t> a, std::span<const std::int32_t> b,
                    std::vector<std::int32_t>& only_a, std::vector<std::int32_t>& only_b) {
    only_a.clear();
    only_b.clear();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            only_a.push_back(a[i++]);
        else if (b[j] < a[i])
            only_b.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    only_a.insert(only_a.end(), a.begin() + i, a.end());
    only_b.insert(only_b.end(), b.begin() + j, b.end());
}

// Rebuilds `list` as (list \ remove) merged with `add`, keeping it sorted.
// remove must be a sorted subset of list; add must be sorted and disjoint
// from the retained part.
void splice_sorted(std::vector<std::int32_t>& list, std::span<const std::int32_t> remove,
                   std::span<const std::int32_t> add, std::vector<std::int32_t>& scratch) {
    scratch.clear();
    std::size_t ri = 0, ai = 0;
    for (std::int32_t e : list) {
        if (ri < remove.size() && e == remove[ri]) {
            ++ri;
            continue;
        }
        while (ai < add.size() && add[ai] < e) scratch.push_back(add[ai++]);
        scratch.push_back(e);
    }
    while (ai < add.size()) scratch.push_back(add[ai++]);
    list.swap(scratch);
}

// Moves a uniformly random t-subset of pool's elements to pool's front via
// partial Fisher-Yates, then sorts that prefix.
void draw_subset(std::vector<std::int32_t>& pool, std::int64_t t, Rng& rng) {
    const auto size = static_cast<std::int64_t>(pool.size());
    for (std::int64_t i = 0; i < t; ++i) {
        const std::int64_t j = i + rng.bounded(size - i);
        std::swap(pool[i], pool[j]);
    }
    std::sort(pool.begin(), pool.begin() + t);
}

}  // namespace

std::pair<std::vector<std::int32_t>, std::vector<std::int32_t>> exclusive_sets(
    std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
    std::vector<std::int32_t> only_a, only_b;
    split_exclusive(a, b, only_a, only_b);
    return {std::move(only_a), std::move(only_b)};
}

ExtractionResult trade_lists(std::vector<std::int32_t>& a, std::vector<std::int32_t>& b, Rng& rng,
                             TradeCountMode mode, TradeScratch& scratch) {
    assert(strictly_increasing(a) && strictly_increasing(b));
    ExtractionResult res;
    split_exclusive(a, b, scratch.excl_a, scratch.excl_b);
    const auto na = static_cast<std::int64_t>(scratch.excl_a.size());
    const auto nb = static_cast<std::int64_t>(scratch.excl_b.size());
    res.n = std::min(na, nb);
    scratch.moved_ab.clear();
    scratch.moved_ba.clear();
    if (res.n == 0) {
        res.t = 0;
        return res;
    }

    if (mode == TradeCountMode::uniform_1_to_n) {
        res.t = 1 + rng.bounded(res.n);
        draw_subset(scratch.excl_a, res.t, rng);
        draw_subset(scratch.excl_b, res.t, rng);
        scratch.moved_ab.assign(scratch.excl_a.begin(), scratch.excl_a.begin() + res.t);
        scratch.moved_ba.assign(scratch.excl_b.begin(), scratch.excl_b.begin() + res.t);
    } else {
        // Pool both exclusive sets, shuffle, and deal the first |excl_a| back
        // to a. Elements that change sides are the traded ones.
        auto& pool = scratch.rebuilt;
        pool.clear();
        pool.insert(pool.end(), scratch.excl_a.begin(), scratch.excl_a.end());
        pool.insert(pool.end(), scratch.excl_b.begin(), scratch.excl_b.end());
        rng.shuffle(pool.begin(), pool.end());
        std::sort(pool.begin(), pool.begin() + na);
        std::sort(pool.begin() + na, pool.end());
        // moved a->b: in excl_a but no longer dealt to a
        std::size_t i = 0;
        for (std::int32_t e : scratch.excl_a) {
            while (i < static_cast<std::size_t>(na) && pool[i] < e) ++i;
            if (i < static_cast<std::size_t>(na) && pool[i] == e)
                ++i;
            else
                scratch.moved_ab.push_back(e);
        }
        std::size_t j = static_cast<std::size_t>(na);
        for (std::int32_t e : scratch.excl_b) {
            while (j < pool.size() && pool[j] < e) ++j;
            if (j < pool.size() && pool[j] == e)
                ++j;
            else
                scratch.moved_ba.push_back(e);
        }
        res.t = static_cast<std::int64_t>(scratch.moved_ab.size());
        assert(scratch.moved_ab.size() == scratch.moved_ba.size());
        if (res.t == 0) return res;
    }

    splice_sorted(a, scratch.moved_ab, scratch.moved_ba, scratch.rebuilt);
    splice_sorted(b, scratch.moved_ba, scratch.moved_ab, scratch.rebuilt);
    assert(strictly_increasing(a) && strictly_increasing(b));
    return res;
}

ExtractionResult extract_pair(PresenceLists& p, Rng& rng, TradeCountMode mode,
                              TradeScratch& scratch) {
    const auto n_lists = static_cast<std::int64_t>(p.lists.size());
    if (n_lists < 2)
        throw std::invalid_argument(
            "extract_pair: need at least 2 presence lists; a 1xC or Rx1 matrix has a unique "
            "configuration");
    const auto [ia, ib] = rng.distinct_pair(n_lists);
    ExtractionResult res = trade_lists(p.lists[ia], p.lists[ib], rng, mode, scratch);
    res.index_a = static_cast<int>(ia);
    res.index_b = static_cast<int>(ib);
    return res;
}

TradeOutcome perform_trade(std::vector<std::int32_t>& a, std::vector<std::int32_t>& b, Rng& rng,
                           TradeCountMode mode) {
    TradeOutcome out;
    auto [ea, eb] = exclusive_sets(a, b);
    out.exclusive_a = std::move(ea);
    out.exclusive_b = std::move(eb);
    TradeScratch scratch;
    const ExtractionResult res = trade_lists(a, b, rng, mode, scratch);
    out.n = res.n;
    out.t = res.t;
    out.moved_a_to_b = scratch.moved_ab;
    out.moved_b_to_a = scratch.moved_ba;
    return out;
}

TradeOutcome pair_extraction(PresenceLists& p, Rng& rng, TradeCountMode mode) {
    const auto n_lists = static_cast<std::int64_t>(p.lists.size());
    if (n_lists < 2)
        throw std::invalid_argument(
            "pair_extraction: need at least 2 presence lists; a 1xC or Rx1 matrix has a unique "
            "configuration");
    const auto [ia, ib] = rng.distinct_pair(n_lists);
    TradeOutcome out = perform_trade(p.lists[ia], p.lists[ib], rng, mode);
    out.index_a = static_cast<int>(ia);
    out.index_b = static_cast<int>(ib);
    return out;
}

std::int64_t default_extraction_count(const BinaryMatrix& m) {
    return std::max<std::int64_t>(1000, 5 * std::max(m.n_rows(), m.n_cols()));
}

BinaryMatrix randomize(const BinaryMatrix& m, const RandomizerConfig& cfg) {
    if (cfg.n_extractions < 1)
        throw std::invalid_argument("randomize: n_extractions must be >= 1");
    PresenceLists p = to_presence_lists(m);
    if (p.lists.size() < 2) return m;
    Rng rng(cfg.seed);
    TradeScratch scratch;
    for (std::int64_t i = 0; i < cfg.n_extractions; ++i)
        extract_pair(p, rng, cfg.mode, scratch);
    return from_presence_lists(p);
}

std::vector<BinaryMatrix> batch_randomize(const BinaryMatrix& m, std::int64_t k,
                                          const RandomizerConfig& cfg, int threads) {
    if (k < 1) throw std::invalid_argument("batch_randomize: k must be >= 1");
    if (cfg.n_extractions < 1)
        throw std::invalid_argument("batch_randomize: n_extractions must be >= 1");

    std::vector<BinaryMatrix> out(static_cast<std::size_t>(k));
    auto run_range = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            RandomizerConfig child = cfg;
            child.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(i));
            out[static_cast<std::size_t>(i)] = randomize(m, child);
        }
    };

    const int n_threads = static_cast<int>(std::clamp<std::int64_t>(threads, 1, k));
    if (n_threads == 1) {
        run_range(0, k);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    const std::int64_t chunk = (k + n_threads - 1) / n_threads;
    for (int w = 0; w < n_threads; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min<std::int64_t>(begin + chunk, k);
        if (begin >= end) break;
        pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace tradenull
