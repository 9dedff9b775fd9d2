#include "rrbf/stbc.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rrbf/errors.hpp"

namespace rrbf {

double Rate2Block::phi2() const { return std::numbers::pi / 2.0 - phi1; }

void Rate2Block::validate() const {
  if (!(phi1 > 0.0 && phi1 < std::numbers::pi / 2.0))
    throw InvalidInput("rotation angle phi1 must lie in (0, pi/2), got " + std::to_string(phi1));
}

SuperSymbolPair super_symbols(const Rate2Block& block) {
  block.validate();
  const double s1 = std::sin(block.phi1), k1 = std::cos(block.phi1);
  const double s2 = std::sin(block.phi2()), k2 = std::cos(block.phi2());
  return {block.x[0] * s1 - std::conj(block.x[1]) * k1,
          block.x[2] * s2 - std::conj(block.x[3]) * k2};
}

Matrix2 alamouti_matrix(cplx c1, cplx c2) { return {c1, c2, -std::conj(c2), std::conj(c1)}; }

Matrix2 encode_rate2(const Rate2Block& block) {
  const auto c = super_symbols(block);
  return alamouti_matrix(c.c1, c.c2);
}

Matrix2 encode_alamouti(cplx x1, cplx x2) { return alamouti_matrix(x1, x2); }

AntennaStreams streams_from_blocks(std::span<const Matrix2> codes) {
  AntennaStreams st;
  st.s1.reserve(2 * codes.size());
  st.s2.reserve(2 * codes.size());
  for (const auto& c : codes) {
    st.s1.push_back(c(0, 0));
    st.s1.push_back(c(1, 0));
    st.s2.push_back(c(0, 1));
    st.s2.push_back(c(1, 1));
  }
  return st;
}

FramedBlocks frame_blocks(std::span<const cplx> symbols, double phi1) {
  if (symbols.size() % 4 != 0)
    throw InvalidInput("frame_blocks: symbol count " + std::to_string(symbols.size()) +
                       " is not a multiple of 4");
  Rate2Block{{}, phi1}.validate();
  FramedBlocks out;
  std::vector<Matrix2> codes;
  out.blocks.reserve(symbols.size() / 4);
  codes.reserve(symbols.size() / 4);
  for (std::size_t i = 0; i < symbols.size(); i += 4) {
    const Rate2Block b{{symbols[i], symbols[i + 1], symbols[i + 2], symbols[i + 3]}, phi1};
    codes.push_back(encode_rate2(b));
    out.blocks.push_back(b);
  }
  out.streams = streams_from_blocks(codes);
  return out;
}

}  // namespace rrbf
