#include "biaslens/combinatorial.hpp"

#include <algorithm>
#include <random>
#include <thread>
#include <unordered_set>

namespace biaslens {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

SlotView make_slot_view(const CorpusSnapshot& corpus, MentionUnit unit) {
    SlotView view;
    view.offsets.reserve(corpus.comments().size() + 1);
    view.offsets.push_back(0);
    const auto& dps = corpus.datapoints();
    std::unordered_set<std::string> seen;
    for (std::size_t c = 0; c < corpus.comments().size(); ++c) {
        if (unit == MentionUnit::distinct_entity) seen.clear();
        for (std::size_t i = corpus.datapoint_begin(c); i < corpus.datapoint_end(c); ++i) {
            auto idx = binary_index(dps[i].gender);
            if (!idx) continue;
            if (unit == MentionUnit::distinct_entity && !seen.insert(dps[i].entity_id).second)
                continue;
            view.genders.push_back(static_cast<std::uint8_t>(*idx));
        }
        view.offsets.push_back(static_cast<std::uint32_t>(view.genders.size()));
    }
    return view;
}

LTable conditional_L(const SlotView& view, const std::vector<std::uint8_t>& genders) {
    std::int64_t num[2][2] = {{0, 0}, {0, 0}};
    std::int64_t den[2] = {0, 0};
    const std::size_t ncom = view.offsets.size() - 1;
    for (std::size_t c = 0; c < ncom; ++c) {
        std::int64_t counts[2] = {0, 0};
        for (std::uint32_t i = view.offsets[c]; i < view.offsets[c + 1]; ++i) ++counts[genders[i]];
        for (int given = 0; given < 2; ++given) {
            if (counts[given] == 0) continue;
            ++den[given];
            // the pre-existing mention of the conditioning gender is excluded
            num[given][given] += counts[given] - 1;
            num[given][1 - given] += counts[1 - given];
        }
    }
    LTable table;
    for (int given = 0; given < 2; ++given) {
        for (int add = 0; add < 2; ++add) {
            table.defined[given][add] = den[given] > 0;
            table.values[given][add] =
                den[given] > 0 ? static_cast<double>(num[given][add]) / static_cast<double>(den[given])
                               : 0.0;
        }
    }
    return table;
}

LTable conditional_L(const CorpusSnapshot& corpus, MentionUnit unit) {
    if (corpus.empty()) throw std::invalid_argument("conditional_L: empty corpus");
    SlotView view = make_slot_view(corpus, unit);
    return conditional_L(view, view.genders);
}

NullEnsemble null_ensemble(const CorpusSnapshot& corpus, int k, std::uint64_t seed, SlotModel model,
                           MentionUnit unit, int threads) {
    if (k < 1) throw std::invalid_argument("null_ensemble: K must be >= 1");
    SlotView view = make_slot_view(corpus, unit);

    NullEnsemble ensemble;
    ensemble.k = k;
    ensemble.seed = seed;
    ensemble.model = model;
    ensemble.samples.resize(k);

    const std::size_t nslots = view.genders.size();
    double female_share = 0.0;
    if (model == SlotModel::resample && nslots > 0) {
        std::size_t nf = static_cast<std::size_t>(
            std::count(view.genders.begin(), view.genders.end(), std::uint8_t{0}));
        female_share = static_cast<double>(nf) / static_cast<double>(nslots);
    }

    auto run_range = [&](int begin, int end) {
        std::vector<std::uint8_t> genders(view.genders);
        for (int i = begin; i < end; ++i) {
            std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i) + 1)));
            if (model == SlotModel::permute) {
                genders = view.genders;
                for (std::size_t j = nslots; j > 1; --j) {
                    std::uniform_int_distribution<std::size_t> pick(0, j - 1);
                    std::swap(genders[j - 1], genders[pick(rng)]);
                }
            } else {
                std::uniform_real_distribution<double> uni(0.0, 1.0);
                for (std::size_t j = 0; j < nslots; ++j)
                    genders[j] = uni(rng) < female_share ? 0 : 1;
            }
            ensemble.samples[i] = conditional_L(view, genders);
        }
    };

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::clamp(nthreads, 1, k);
    if (nthreads == 1) {
        run_range(0, k);
    } else {
        std::vector<std::thread> pool;
        int chunk = (k + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            int begin = t * chunk;
            int end = std::min(k, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return ensemble;
}

std::array<std::array<CellSignificance, 2>, 2> combinatorial_significance(
    const LTable& observed, const NullEnsemble& ensemble) {
    if (ensemble.samples.empty())
        throw std::invalid_argument("combinatorial_significance: empty ensemble");
    std::array<std::array<CellSignificance, 2>, 2> out{};
    for (int given = 0; given < 2; ++given) {
        for (int add = 0; add < 2; ++add) {
            if (!observed.defined[given][add])
                throw std::domain_error("combinatorial_significance: observed cell undefined");
            std::vector<double> nulls;
            nulls.reserve(ensemble.samples.size());
            for (const LTable& sample : ensemble.samples)
                if (sample.defined[given][add]) nulls.push_back(sample.values[given][add]);
            if (nulls.empty())
                throw std::domain_error("combinatorial_significance: no usable null samples");
            double obs = observed.values[given][add];
            std::size_t le = 0, ge = 0;
            for (double v : nulls) {
                if (v <= obs) ++le;
                if (v >= obs) ++ge;
            }
            CellSignificance cell;
            cell.usable_nulls = static_cast<int>(nulls.size());
            cell.p = stats::empirical_p(obs, nulls, stats::Tail::two_sided);
            cell.less_than = std::min(le, ge) == 0;
            out[given][add] = cell;
        }
    }
    return out;
}

}  // namespace biaslens
