#pragma once

#include <array>
#include <span>
#include <vector>

#include "rrbf/numerics.hpp"

namespace rrbf {

/// Repo default rotation angle atan(2). Found by tools/phi_search, which
/// maximizes the minimum codeword-difference determinant for 4-QAM; at this
/// angle sin(phi)*x1 - cos(phi)*conj(x2) spans a uniform 16-point grid.
inline constexpr double kDefaultPhi1 = 1.1071487177940904;

/// Four information symbols and the rotation angle of the first super-symbol.
/// The second angle is always pi/2 - phi1.
struct Rate2Block {
  std::array<cplx, 4> x{};
  double phi1 = kDefaultPhi1;

  double phi2() const;
  void validate() const;
};

struct SuperSymbolPair {
  cplx c1;
  cplx c2;
};

/// c1 = x1 sin(phi1) - conj(x2) cos(phi1), c2 = x3 sin(phi2) - conj(x4) cos(phi2).
SuperSymbolPair super_symbols(const Rate2Block& block);

/// Outer Alamouti structure over two super-symbols: [[c1, c2], [-c2*, c1*]].
/// Rows are channel uses, columns are transmit antennas.
Matrix2 alamouti_matrix(cplx c1, cplx c2);

/// Rate-2 code matrix of a block.
Matrix2 encode_rate2(const Rate2Block& block);

/// Conventional Alamouti code [[x1, x2], [-x2*, x1*]].
Matrix2 encode_alamouti(cplx x1, cplx x2);

/// Per-antenna code-symbol streams. Entry 2b+e is channel use e of block b.
struct AntennaStreams {
  std::vector<cplx> s1;
  std::vector<cplx> s2;

  std::size_t size() const { return s1.size(); }
};

/// Appends each code matrix column-wise: antenna a receives (C(0,a), C(1,a)).
AntennaStreams streams_from_blocks(std::span<const Matrix2> codes);

struct FramedBlocks {
  std::vector<Rate2Block> blocks;
  AntennaStreams streams;
};

/// Groups 4N symbols into N blocks (consecutive 4-tuples) and their streams.
FramedBlocks frame_blocks(std::span<const cplx> symbols, double phi1);

}  // namespace rrbf
