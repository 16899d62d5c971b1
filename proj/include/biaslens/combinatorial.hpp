#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "biaslens/corpus.hpp"
#include "biaslens/stats/tests.hpp"

namespace biaslens {

// Conditional co-mention measure indexed [given][additional] over
// {female, male}. When additional == given, a comment's own triggering
// mention is not counted, so a single-female comment contributes 0 to
// values[f][f]. A cell whose conditioning gender never appears is undefined.
struct LTable {
    std::array<std::array<double, 2>, 2> values{};
    std::array<std::array<bool, 2>, 2> defined{};
};

// Whether repeated mentions of one entity in a comment count once per
// mention record (as ingested) or once per distinct entity.
enum class MentionUnit { record, distinct_entity };

// How a null sample reassigns genders to mention slots: a uniform random
// permutation of the observed gender multiset (preserves global totals
// exactly), or independent per-slot resampling at the observed marginal
// share (preserves totals in expectation) for sensitivity analysis.
enum class SlotModel { permute, resample };

LTable conditional_L(const CorpusSnapshot& corpus, MentionUnit unit = MentionUnit::record);

// Compact mention-slot layout used by the permutation machinery: slot i
// holds the binary gender (0 = female, 1 = male) of one mention; comment c
// owns slots [offsets[c], offsets[c+1]). Mentions of "other"-gender entities
// are outside the binary analysis and carry no slot.
struct SlotView {
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint8_t> genders;
};

SlotView make_slot_view(const CorpusSnapshot& corpus, MentionUnit unit = MentionUnit::record);
LTable conditional_L(const SlotView& view, const std::vector<std::uint8_t>& genders);

struct NullEnsemble {
    int k = 0;
    std::uint64_t seed = 0;
    SlotModel model = SlotModel::permute;
    std::vector<LTable> samples;
};

// K independent null samples; sample i draws from a deterministic random
// stream derived from (seed, i), so results are identical regardless of
// thread count or scheduling. threads = 0 uses the hardware concurrency.
NullEnsemble null_ensemble(const CorpusSnapshot& corpus, int k, std::uint64_t seed,
                           SlotModel model = SlotModel::permute,
                           MentionUnit unit = MentionUnit::record, int threads = 0);

struct CellSignificance {
    double p = 1.0;
    // True when no null value was at least as extreme as the observation;
    // the true p then lies below the reported 2/(K+1) resolution bound.
    bool less_than = false;
    int usable_nulls = 0;
};

// Two-sided empirical p per cell.
std::array<std::array<CellSignificance, 2>, 2> combinatorial_significance(
    const LTable& observed, const NullEnsemble& ensemble);

}  // namespace biaslens
