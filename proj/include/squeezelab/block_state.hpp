#pragma once

// Charge-block layout for states of Hamiltonians with conserved integer
// charges. Each basis tuple lives in exactly one block, labelled by the
// values of the conserved charges on that tuple.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "squeezelab/fock_state.hpp"
#include "squeezelab/operator.hpp"

namespace squeezelab {

using ChargeKey = std::vector<int>;

/// Linear conserved charges: charge k of a tuple is sum_m weights[k][m] * n_m.
struct ChargeSpec {
  int modes = 0;
  std::vector<std::vector<int>> weights;

  ChargeKey charge(const Occupation& occ) const {
    ChargeKey key(weights.size(), 0);
    for (std::size_t k = 0; k < weights.size(); ++k)
      for (int m = 0; m < modes; ++m) key[k] += weights[k][static_cast<std::size_t>(m)] * occ[m];
    return key;
  }

  /// The operator sum_m weights[k][m] n_m.
  Operator charge_operator(std::size_t k) const {
    Operator op;
    for (int m = 0; m < modes; ++m) {
      const int w = weights[k][static_cast<std::size_t>(m)];
      if (w != 0) op += static_cast<double>(w) * Operator::number(m);
    }
    return op;
  }
};

/// Immutable block structure: basis tuples per charge value and a reverse index.
class BlockLayout {
 public:
  struct Block {
    ChargeKey charge;
    std::vector<Occupation> basis;
  };

  explicit BlockLayout(ChargeSpec spec) : spec_(std::move(spec)) {}

  /// Adds a block; every tuple must carry charge `key` and be new to the layout.
  void add_block(ChargeKey key, std::vector<Occupation> basis) {
    if (by_charge_.contains(key)) throw std::invalid_argument("BlockLayout: duplicate charge block");
    const auto block_id = static_cast<std::uint32_t>(blocks_.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Occupation& occ = basis[i];
      if (occ.modes != spec_.modes) throw std::invalid_argument("BlockLayout: tuple has wrong mode count");
      for (int m = 0; m < occ.modes; ++m)
        if (occ[m] < 0) throw std::invalid_argument("BlockLayout: negative occupation");
      if (spec_.charge(occ) != key) throw std::invalid_argument("BlockLayout: tuple charge does not match block");
      auto [it, inserted] = index_.emplace(occ.packed(), std::make_pair(block_id, static_cast<std::uint32_t>(i)));
      if (!inserted) throw std::invalid_argument("BlockLayout: tuple appears in two blocks");
    }
    by_charge_.emplace(key, blocks_.size());
    blocks_.push_back(Block{std::move(key), std::move(basis)});
  }

  const ChargeSpec& spec() const { return spec_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t dimension() const { return index_.size(); }

  const Block* find(const ChargeKey& key) const {
    auto it = by_charge_.find(key);
    return it == by_charge_.end() ? nullptr : &blocks_[it->second];
  }
  std::optional<std::size_t> block_index(const ChargeKey& key) const {
    auto it = by_charge_.find(key);
    if (it == by_charge_.end()) return std::nullopt;
    return it->second;
  }

  /// (block, position) of a tuple, or nullopt if it lies outside every block.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> locate(const Occupation& occ) const {
    auto it = index_.find(occ.packed());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  ChargeSpec spec_;
  std::vector<Block> blocks_;
  std::map<ChargeKey, std::size_t> by_charge_;
  std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> index_;
};

class BlockState {
 public:
  BlockState(std::shared_ptr<const BlockLayout> layout, std::vector<std::vector<complex>> amplitudes)
      : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != layout_->blocks().size())
      throw std::invalid_argument("BlockState: one amplitude vector per block required");
    for (std::size_t b = 0; b < amplitudes_.size(); ++b)
      if (amplitudes_[b].size() != layout_->blocks()[b].basis.size())
        throw std::invalid_argument("BlockState: block amplitude size mismatch");
  }

  const BlockLayout& layout() const { return *layout_; }
  const std::shared_ptr<const BlockLayout>& layout_ptr() const { return layout_; }
  const std::vector<std::vector<complex>>& amplitudes() const { return amplitudes_; }
  std::vector<complex>& block(std::size_t b) { return amplitudes_[b]; }
  const std::vector<complex>& block(std::size_t b) const { return amplitudes_[b]; }

  complex amplitude(const Occupation& occ) const {
    auto where = layout_->locate(occ);
    return where ? amplitudes_[where->first][where->second] : complex{};
  }

  double norm_squared() const {
    double sum = 0.0;
    for (const auto& blk : amplitudes_)
      for (auto c : blk) sum += std::norm(c);
    return sum;
  }

  /// Dense tensor with the given per-mode dims; tuples outside dims must be zero.
  FockState to_dense(std::vector<int> dims) const {
    FockState zero = FockState::vacuum(dims);
    std::vector<complex> out(zero.size());
    const auto& blocks = layout_->blocks();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (std::size_t i = 0; i < blocks[b].basis.size(); ++i) {
        const complex c = amplitudes_[b][i];
        if (!zero.contains(blocks[b].basis[i])) {
          if (c != complex{}) throw TruncationError("BlockState::to_dense: populated tuple outside dims");
          continue;
        }
        out[zero.index(blocks[b].basis[i])] = c;
      }
    }
    return FockState(std::move(dims), std::move(out));
  }

 private:
  std::shared_ptr<const BlockLayout> layout_;
  std::vector<std::vector<complex>> amplitudes_;
};

/// <state| op |state>, summing matrix elements across blocks. Tuples mapped
/// outside the layout contribute nothing.
inline complex expectation(const BlockState& state, const Operator& op) {
  const auto& layout = state.layout();
  if (op.max_mode() >= layout.spec().modes) throw std::out_of_range("expectation: operator references a missing mode");
  const auto& blocks = layout.blocks();
  complex total{};
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& amps = state.block(b);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (amps[i] == complex{}) continue;
      for (const auto& term : op.terms()) {
        Occupation occ = blocks[b].basis[i];
        auto factor = term.apply(occ);
        if (!factor) continue;
        auto where = layout.locate(occ);
        if (!where) continue;
        total += std::conj(state.block(where->first)[where->second]) * term.coeff * *factor * amps[i];
      }
    }
  }
  return total;
}

}  // namespace squeezelab
