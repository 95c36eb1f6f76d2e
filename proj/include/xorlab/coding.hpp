#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace xorlab {

using Bits = std::vector<std::uint8_t>;

/// Append-only bit sink for the integer codes.
class BitWriter {
 public:
  void put(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void put_bits(std::uint64_t value, int count);  // MSB first
  const Bits& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }

 private:
  Bits bits_;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bits) : bits_(bits) {}
  bool get();
  std::uint64_t get_bits(int count);
  bool done() const { return pos_ >= bits_.size(); }
  std::size_t position() const { return pos_; }

 private:
  std::span<const std::uint8_t> bits_;
  std::size_t pos_ = 0;
};

/// 2 floor(log2 u) + 1. Throws std::invalid_argument for u = 0.
std::uint64_t elias_gamma_len(std::uint64_t u);
/// floor(log2 u) + 2 floor(log2(floor(log2 u) + 1)) + 1.
std::uint64_t elias_delta_len(std::uint64_t u);

void elias_gamma_encode(std::uint64_t u, BitWriter& out);
void elias_delta_encode(std::uint64_t u, BitWriter& out);
/// Throws std::out_of_range on truncated input.
std::uint64_t elias_gamma_decode(BitReader& in);
std::uint64_t elias_delta_decode(BitReader& in);

enum class PointerCost { uniform, vlc };

struct Lz78Config {
  PointerCost pointer_cost = PointerCost::uniform;
  // A final phrase that is already in the dictionary is charged its pointer
  // only; there is no end-of-stream symbol and no pairs mode.
};

struct Lz78Result {
  double bits = 0;
  std::size_t phrases = 0;  // includes a trailing pointer-only phrase
};

/// LZ78 phrase parsing from a dictionary holding only the empty phrase
/// (index 0). A new phrase costs pointer_cost(|D|) + 1 bits, where |D| counts
/// the entries before the phrase is added. Uniform pointers cost
/// max(1, ceil(log2 |D|)); VLC pointers cost elias_gamma_len(index + 1).
Lz78Result lz78_parse(std::span<const std::uint8_t> x, const Lz78Config& cfg);
double lz78_cost(std::span<const std::uint8_t> x, const Lz78Config& cfg);

/// Sequential code length sum_t -log2 P(x_t | previous k bits) under the
/// Krichevsky-Trofimov estimator, P = (count + 1/2) / (total + 1). Bits
/// before the start of the stream read as 0.
double kgram_code_len(std::span<const std::uint8_t> x, int k);

struct KgramModel {
  int k = 0;
};
struct LzModel {
  Lz78Config cfg;
};
using CodeModel = std::variant<KgramModel, LzModel>;

std::string model_name(const CodeModel& m);
double code_len(std::span<const std::uint8_t> x, const CodeModel& m);

enum class ContextMode { label_block, side };

std::string to_string(ContextMode m);
ContextMode context_mode_from_string(const std::string& s);

struct PcgResult {
  double mdl = 0;
  double cmdl = 0;
  double pcg = 0;
  bool clamped = false;
};

/// MDL(X) - CMDL(X | C). Label mode codes each label's sub-stream separately
/// (positions kept in order, no label-stream cost). Side mode codes the
/// residual X xor S. With clamp, a negative gap is raised to 0.
PcgResult pcg(std::span<const std::uint8_t> x, std::span<const std::uint8_t> ctx, ContextMode mode,
              const CodeModel& model, bool clamp);

/// Lengths of the streams pcg would code for CMDL (both label sub-streams,
/// or the residual).
std::vector<std::size_t> conditional_stream_lengths(std::span<const std::uint8_t> ctx, ContextMode mode);

/// Largest k' <= k with L / 2^k' >= ratio; 0 if none.
int clamp_k_for_length(int k, std::size_t length, double ratio);

}  // namespace xorlab
