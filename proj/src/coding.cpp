#include "xorlab/coding.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace xorlab {

void BitWriter::put_bits(std::uint64_t value, int count) {
  for (int i = count - 1; i >= 0; --i) put((value >> i) & 1U);
}

bool BitReader::get() {
  if (pos_ >= bits_.size()) throw std::out_of_range("bit stream exhausted");
  return bits_[pos_++] != 0;
}

std::uint64_t BitReader::get_bits(int count) {
  std::uint64_t v = 0;
  for (int i = 0; i < count; ++i) v = (v << 1) | (get() ? 1U : 0U);
  return v;
}

namespace {

int floor_log2(std::uint64_t u) { return 63 - std::countl_zero(u); }

void require_positive(std::uint64_t u) {
  if (u == 0) throw std::invalid_argument("Elias codes are defined for u >= 1");
}

}  // namespace

std::uint64_t elias_gamma_len(std::uint64_t u) {
  require_positive(u);
  return 2 * static_cast<std::uint64_t>(floor_log2(u)) + 1;
}

std::uint64_t elias_delta_len(std::uint64_t u) {
  require_positive(u);
  const auto n = static_cast<std::uint64_t>(floor_log2(u));
  return n + 2 * static_cast<std::uint64_t>(floor_log2(n + 1)) + 1;
}

void elias_gamma_encode(std::uint64_t u, BitWriter& out) {
  require_positive(u);
  const int n = floor_log2(u);
  for (int i = 0; i < n; ++i) out.put(false);
  out.put_bits(u, n + 1);
}

void elias_delta_encode(std::uint64_t u, BitWriter& out) {
  require_positive(u);
  const int n = floor_log2(u);
  elias_gamma_encode(static_cast<std::uint64_t>(n) + 1, out);
  out.put_bits(u, n);  // low n bits, leading 1 implied
}

std::uint64_t elias_gamma_decode(BitReader& in) {
  int zeros = 0;
  while (!in.get()) {
    if (++zeros > 63) throw std::out_of_range("Elias gamma prefix too long");
  }
  return (std::uint64_t{1} << zeros) | in.get_bits(zeros);
}

std::uint64_t elias_delta_decode(BitReader& in) {
  const std::uint64_t len = elias_gamma_decode(in);
  if (len > 64) throw std::out_of_range("Elias delta length too large");
  const int n = static_cast<int>(len) - 1;
  return (std::uint64_t{1} << n) | in.get_bits(n);
}

namespace {

double pointer_bits(PointerCost pc, std::size_t dict_size, std::size_t index) {
  if (pc == PointerCost::vlc) return static_cast<double>(elias_gamma_len(index + 1));
  // max(1, ceil(log2 |D|))
  int bits = 0;
  while ((std::size_t{1} << bits) < dict_size) ++bits;
  return static_cast<double>(bits < 1 ? 1 : bits);
}

}  // namespace

Lz78Result lz78_parse(std::span<const std::uint8_t> x, const Lz78Config& cfg) {
  std::vector<std::array<std::int32_t, 2>> trie{{-1, -1}};
  Lz78Result r;
  std::int32_t cur = 0;
  for (std::uint8_t raw : x) {
    const int b = raw & 1;
    const std::int32_t next = trie[static_cast<std::size_t>(cur)][b];
    if (next >= 0) {
      cur = next;
      continue;
    }
    r.bits += pointer_bits(cfg.pointer_cost, trie.size(), static_cast<std::size_t>(cur)) + 1.0;
    ++r.phrases;
    trie[static_cast<std::size_t>(cur)][b] = static_cast<std::int32_t>(trie.size());
    trie.push_back({-1, -1});
    cur = 0;
  }
  if (cur != 0) {
    r.bits += pointer_bits(cfg.pointer_cost, trie.size(), static_cast<std::size_t>(cur));
    ++r.phrases;
  }
  return r;
}

double lz78_cost(std::span<const std::uint8_t> x, const Lz78Config& cfg) { return lz78_parse(x, cfg).bits; }

double kgram_code_len(std::span<const std::uint8_t> x, int k) {
  if (k < 0 || k > 24) throw std::invalid_argument("k-gram order must lie in [0, 24]");
  const std::size_t contexts = std::size_t{1} << k;
  const std::uint32_t mask = static_cast<std::uint32_t>(contexts - 1);
  std::vector<std::uint32_t> counts(2 * contexts, 0);
  std::uint32_t ctx = 0;
  double bits = 0;
  for (std::uint8_t raw : x) {
    const unsigned b = raw & 1U;
    auto* c = &counts[2 * ctx];
    bits -= std::log2((c[b] + 0.5) / (c[0] + c[1] + 1.0));
    ++c[b];
    ctx = ((ctx << 1) | b) & mask;
  }
  return bits;
}

std::string model_name(const CodeModel& m) {
  if (std::holds_alternative<KgramModel>(m)) return "kgram";
  const auto& lz = std::get<LzModel>(m);
  return lz.cfg.pointer_cost == PointerCost::vlc ? "lz78_vlc" : "lz78_uniform";
}

double code_len(std::span<const std::uint8_t> x, const CodeModel& m) {
  if (const auto* kg = std::get_if<KgramModel>(&m)) return kgram_code_len(x, kg->k);
  return lz78_cost(x, std::get<LzModel>(m).cfg);
}

std::string to_string(ContextMode m) { return m == ContextMode::side ? "side" : "label-block"; }

ContextMode context_mode_from_string(const std::string& s) {
  if (s == "label-block") return ContextMode::label_block;
  if (s == "side") return ContextMode::side;
  throw std::invalid_argument("unknown context mode: " + s);
}

std::vector<std::size_t> conditional_stream_lengths(std::span<const std::uint8_t> ctx, ContextMode mode) {
  if (mode == ContextMode::side) return {ctx.size()};
  std::size_t ones = 0;
  for (auto c : ctx) ones += c & 1U;
  return {ctx.size() - ones, ones};
}

PcgResult pcg(std::span<const std::uint8_t> x, std::span<const std::uint8_t> ctx, ContextMode mode,
              const CodeModel& model, bool clamp) {
  if (x.size() != ctx.size()) throw std::invalid_argument("stream and context lengths differ");
  PcgResult r;
  r.mdl = code_len(x, model);
  if (mode == ContextMode::label_block) {
    Bits part0, part1;
    for (std::size_t t = 0; t < x.size(); ++t) ((ctx[t] & 1U) ? part1 : part0).push_back(x[t] & 1U);
    r.cmdl = code_len(part0, model) + code_len(part1, model);
  } else {
    Bits residual(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) residual[t] = (x[t] ^ ctx[t]) & 1U;
    r.cmdl = code_len(residual, model);
  }
  r.pcg = r.mdl - r.cmdl;
  if (clamp && r.pcg < 0) {
    r.pcg = 0;
    r.clamped = true;
  }
  return r;
}

int clamp_k_for_length(int k, std::size_t length, double ratio) {
  while (k > 0 && static_cast<double>(length) / std::ldexp(1.0, k) < ratio) --k;
  return k;
}

}  // namespace xorlab
