// Reference matrices transcribed by hand, stored in the text file format
// so they exercise the parser as well. The zone widths quoted in the names
// are the known values the suite checks against.
#pragma once

#include "szcz/matrix_io.hpp"
#include "szcz/sparse_matrix.hpp"

namespace fixtures {

// 4x32 single-chain matrix, zone width 2
inline const char* kChain4x32 = R"(2 4 32
+ + + - . . . . . . . . . . . . + + - + . . . . . . . . . . . .
. . . . + + + - . . . . . . . . . . . . + + - + . . . . . . . .
. . . . . . . . + + + - . . . . . . . . . . . . + + - + . . . .
. . . . . . . . . . . . + + + - . . . . . . . . . . . . + + - +
)";

// 4x64 partitioned-chain matrix, zone width 8
inline const char* kBlockChain4x64 = R"(2 4 64
+ . + . . . . . + . + . . . . . + . - . . . . . + . - . . . . . + . + . . . . . - . - . . . . . + . - . . . . . - . + . . . . .
. . . . - . - . . . . . + . + . . . . . - . + . . . . . + . - . . . . . - . - . . . . . - . - . . . . . - . + . . . . . - . + .
. - . + . . . . . - . + . . . . . - . - . . . . . - . - . . . . . - . + . . . . . + . - . . . . . - . - . . . . . + . + . . . .
. . . . . + . - . . . . . - . + . . . . . + . + . . . . . - . - . . . . . + . - . . . . . + . - . . . . . + . + . . . . . + . +
)";

// 4x64 pair-arrangement baseline, zone width 4
inline const char* kPairBaseline4x64 = R"(2 4 64
+ + + - + + - + . . . . . . . . . . . . . . . . . . . . . . . . + + + - - - + - . . . . . . . . . . . . . . . . . . . . . . . .
. . . . . . . . + + + - + + - + . . . . . . . . . . . . . . . . . . . . . . . . + + + - - - + - . . . . . . . . . . . . . . . .
. . . . . . . . . . . . . . . . + + + - + + - + . . . . . . . . . . . . . . . . . . . . . . . . + + + - - - + - . . . . . . . .
. . . . . . . . . . . . . . . . . . . . . . . . + + + - + + - + . . . . . . . . . . . . . . . . . . . . . . . . + + + - - - + -
)";

// 4x64 set-arrangement baseline, zone width 3
inline const char* kSetBaseline4x64 = R"(2 4 64
+ - + + . . . . . . . . . . . . + + + - . . . . . . . . . . . . + - + + . . . . . . . . . . . . - - - + . . . . . . . . . . . .
. . . . + - + + . . . . . . . . . . . . + + + - . . . . . . . . . . . . + - + + . . . . . . . . . . . . - - - + . . . . . . . .
. . . . . . . . + - + + . . . . . . . . . . . . + + + - . . . . . . . . . . . . + - + + . . . . . . . . . . . . - - - + . . . .
. . . . . . . . . . . . + - + + . . . . . . . . . . . . + + + - . . . . . . . . . . . . + - + + . . . . . . . . . . . . - - - +
)";

// length-8 complementary pair with zone width 4
inline const char* kPair8 = R"(2 2 8
+ + + - + + - +
+ + + - - - + -
)";

// four length-4 sequences forming a complementary set with zone width 3
inline const char* kSet4x4 = R"(2 4 4
+ - + +
+ + + -
+ - + +
- - - +
)";

inline szcz::SparseMatrix load(const char* text) { return szcz::parse_matrix(std::string(text)); }

}  // namespace fixtures
