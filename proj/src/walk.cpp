#include "qtri/walk.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qtri {

WalkBasis::WalkBasis(int n, int r) : n_(n), r_(r) {
    if (r < 1 || r + 1 > n) throw std::invalid_argument("WalkBasis: need 1 <= r < n");
    if (n > 14 || r > 6) throw std::invalid_argument("WalkBasis: exact simulation limited to n <= 14, r <= 6");

    binom_.assign(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1), 0);
    for (int a = 0; a <= n; ++a) {
        binom_[static_cast<std::size_t>(a) * (n + 1)] = 1;
        for (int b = 1; b <= a; ++b) {
            binom_[static_cast<std::size_t>(a) * (n + 1) + b] =
                choose(a - 1, b - 1) + choose(a - 1, b);
        }
    }

    sets_r_ = choose(n, r);
    r_sector_ = sets_r_ * static_cast<std::size_t>(n - r);
    r1_sector_ = choose(n, r + 1) * static_cast<std::size_t>(r + 1);
    // The shift is a bijection between the sectors.
    if (r_sector_ != r1_sector_) throw std::logic_error("sector sizes must agree");

    shift_map_.assign(size(), 0);
    for (std::size_t index = 0; index < r_sector_; ++index) {
        auto [set, coin] = decode(index);
        std::vector<int> grown = set;
        grown.insert(std::lower_bound(grown.begin(), grown.end(), coin), coin);
        const std::size_t partner = encode_r1(grown, coin);
        shift_map_[index] = partner;
        shift_map_[partner] = index;
    }
}

std::uint64_t WalkBasis::choose(int a, int b) const {
    if (b < 0 || b > a) return 0;
    return binom_[static_cast<std::size_t>(a) * (n_ + 1) + b];
}

std::size_t WalkBasis::rank_subset(const std::vector<int>& set) const {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        rank += choose(set[i], static_cast<int>(i) + 1);
    }
    return static_cast<std::size_t>(rank);
}

std::vector<int> WalkBasis::unrank_subset(std::size_t rank, int size) const {
    std::vector<int> set(static_cast<std::size_t>(size));
    auto remaining = static_cast<std::uint64_t>(rank);
    int element = n_ - 1;
    for (int slot = size; slot >= 1; --slot) {
        while (choose(element, slot) > remaining) --element;
        set[static_cast<std::size_t>(slot - 1)] = element;
        remaining -= choose(element, slot);
        --element;
    }
    return set;
}

std::size_t WalkBasis::encode_r(const std::vector<int>& set, int coin) const {
    if (static_cast<int>(set.size()) != r_) throw std::invalid_argument("encode_r: wrong set size");
    if (std::binary_search(set.begin(), set.end(), coin)) throw std::invalid_argument("encode_r: coin inside set");
    // Coin position among the complement of the set.
    int position = coin;
    for (int member : set) {
        if (member < coin) --position;
    }
    return rank_subset(set) * static_cast<std::size_t>(n_ - r_) + static_cast<std::size_t>(position);
}

std::size_t WalkBasis::encode_r1(const std::vector<int>& set, int coin) const {
    if (static_cast<int>(set.size()) != r_ + 1) throw std::invalid_argument("encode_r1: wrong set size");
    const auto it = std::lower_bound(set.begin(), set.end(), coin);
    if (it == set.end() || *it != coin) throw std::invalid_argument("encode_r1: coin outside set");
    const auto position = static_cast<std::size_t>(it - set.begin());
    return r_sector_ + rank_subset(set) * static_cast<std::size_t>(r_ + 1) + position;
}

std::pair<std::vector<int>, int> WalkBasis::decode(std::size_t index) const {
    if (index < r_sector_) {
        const std::size_t rank = index / static_cast<std::size_t>(n_ - r_);
        const int position = static_cast<int>(index % static_cast<std::size_t>(n_ - r_));
        std::vector<int> set = unrank_subset(rank, r_);
        // position-th element of the complement.
        int coin = position;
        for (int member : set) {
            if (member <= coin) ++coin;
        }
        return {std::move(set), coin};
    }
    const std::size_t offset = index - r_sector_;
    if (offset >= r1_sector_) throw std::invalid_argument("decode: index out of range");
    const std::size_t rank = offset / static_cast<std::size_t>(r_ + 1);
    const auto position = static_cast<std::size_t>(offset % static_cast<std::size_t>(r_ + 1));
    std::vector<int> set = unrank_subset(rank, r_ + 1);
    const int coin = set[position];
    return {std::move(set), coin};
}

std::vector<int> WalkBasis::unrank_r(std::size_t rank) const { return unrank_subset(rank, r_); }

namespace {

void diffuse_blocks(StateVector& state, std::size_t begin, std::size_t count, std::size_t block) {
    for (std::size_t b = 0; b < count; ++b) {
        std::complex<double>* first = state.amp.data() + begin + b * block;
        std::complex<double> sum(0.0, 0.0);
        for (std::size_t i = 0; i < block; ++i) sum += first[i];
        const std::complex<double> twice_mean = 2.0 / static_cast<double>(block) * sum;
        for (std::size_t i = 0; i < block; ++i) first[i] = twice_mean - first[i];
    }
}

}  // namespace

void walk_step_in_place(const WalkBasis& basis, StateVector& state) {
    if (state.size() != basis.size()) throw std::invalid_argument("walk_step: state/basis size mismatch");
    const auto coin_r = static_cast<std::size_t>(basis.n() - basis.r());
    const auto coin_r1 = static_cast<std::size_t>(basis.r() + 1);
    const std::vector<std::size_t>& shift = basis.shift_map();

    auto apply_shift = [&]() {
        for (std::size_t index = 0; index < basis.r_sector_size(); ++index) {
            std::swap(state.amp[index], state.amp[shift[index]]);
        }
    };

    const std::size_t sets_r1 = (basis.size() - basis.r_sector_size()) / coin_r1;
    diffuse_blocks(state, 0, basis.set_count_r(), coin_r);              // coin over S - A
    apply_shift();                                                      // add x to A
    diffuse_blocks(state, basis.r_sector_size(), sets_r1, coin_r1);     // coin over A
    apply_shift();                                                      // remove x from A
}

StateVector walk_step(const WalkBasis& basis, StateVector state) {
    walk_step_in_place(basis, state);
    return state;
}

ExactCollisionInstance element_distinctness_instance(std::vector<int> values) {
    ExactCollisionInstance instance;
    instance.n = static_cast<int>(values.size());
    instance.arity = 2;
    instance.values = std::move(values);
    instance.description = "element distinctness";
    const std::vector<int>& f = instance.values;
    instance.marked = [&f](const std::vector<int>& set) {
        for (std::size_t i = 0; i < set.size(); ++i) {
            for (std::size_t j = i + 1; j < set.size(); ++j) {
                if (f[static_cast<std::size_t>(set[i])] == f[static_cast<std::size_t>(set[j])]) return true;
            }
        }
        return false;
    };
    instance.extract = [&f](const std::vector<int>& set) -> std::optional<std::vector<int>> {
        for (std::size_t i = 0; i < set.size(); ++i) {
            for (std::size_t j = i + 1; j < set.size(); ++j) {
                if (f[static_cast<std::size_t>(set[i])] == f[static_cast<std::size_t>(set[j])]) {
                    return std::vector<int>{set[i], set[j]};
                }
            }
        }
        return std::nullopt;
    };
    return instance;
}

GenericExactResult generic_exact(const ExactCollisionInstance& instance, int r, int t1, int t2) {
    if (r < instance.arity) throw std::domain_error("generic_exact: r must be at least the collision arity");
    if (t1 < 0 || t2 < 0) throw std::domain_error("generic_exact: negative iteration counts");
    WalkBasis basis(instance.n, r);

    // Marked flags per set rank, for both sectors.
    std::vector<char> marked_r(basis.set_count_r(), 0);
    for (std::size_t rank = 0; rank < basis.set_count_r(); ++rank) {
        marked_r[rank] = instance.marked(basis.unrank_r(rank)) ? 1 : 0;
    }

    const auto coin_r = static_cast<std::size_t>(instance.n - r);
    StateVector state(basis.size());
    {
        const double value = 1.0 / std::sqrt(static_cast<double>(basis.r_sector_size()));
        for (std::size_t i = 0; i < basis.r_sector_size(); ++i) state.amp[i] = value;
    }

    for (int outer = 0; outer < t1; ++outer) {
        for (std::size_t rank = 0; rank < basis.set_count_r(); ++rank) {
            if (!marked_r[rank]) continue;
            std::complex<double>* first = state.amp.data() + rank * coin_r;
            for (std::size_t i = 0; i < coin_r; ++i) first[i] = -first[i];
        }
        for (int inner = 0; inner < t2; ++inner) walk_step_in_place(basis, state);
    }

    GenericExactResult result;
    std::map<std::vector<int>, double> witness_mass;
    for (std::size_t index = 0; index < basis.size(); ++index) {
        const double mass = std::norm(state.amp[index]);
        if (mass == 0.0) continue;
        const auto [set, coin] = basis.decode(index);
        (void)coin;
        if (!instance.marked(set)) continue;
        result.success_probability += mass;
        if (auto witness = instance.extract(set)) witness_mass[*witness] += mass;
    }
    if (result.success_probability > 0.0) {
        for (auto& [witness, mass] : witness_mass) {
            result.witness_distribution.emplace_back(witness, mass / result.success_probability);
        }
    }
    return result;
}

SweepResult generic_exact_sweep(const ExactCollisionInstance& instance, int r, int t1_max, int t2_max) {
    SweepResult result;
    result.baseline = generic_exact(instance, r, 0, 0).success_probability;
    result.best = SweepPoint{0, 0, result.baseline};
    for (int t1 = 1; t1 <= t1_max; ++t1) {
        for (int t2 = 1; t2 <= t2_max; ++t2) {
            const double p = generic_exact(instance, r, t1, t2).success_probability;
            result.grid.push_back({t1, t2, p});
            if (p > result.best.success_probability) result.best = {t1, t2, p};
        }
    }
    return result;
}

}  // namespace qtri
