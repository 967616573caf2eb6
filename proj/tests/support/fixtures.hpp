#pragma once

// Worked polynomials used across suites. The same texts live under data/examples/.

#include <rescorr/parser.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace rescorr::testing {

inline const char* const kP32 =
    "i z^3 w^2 + 5 z^3 w - z^2 w^2 + z^3 - 2 z^2 w + 11i z w^2 - 6 z^2 + 55 z w - w^2 + 11 z - 2 w - 6";

inline const char* const kFactorA = "z^3 w^2 + z^3 - 6 z^2 + w^2 + 11 z - 6";
inline const char* const kFactorB = "z^2 w^2 + z^2 - 2 z w + w^2 - 2 z + 1";
inline const char* const kProduct54 =
    "z^5 w^4 + 2 z^5 w^2 - 2 z^4 w^3 + z^3 w^4 - 8 z^4 w^2 + z^2 w^4 + z^5 - 2 z^4 w + 13 z^3 w^2"
    " - 8 z^4 + 12 z^3 w - 11 z^2 w^2 - 2 z w^3 + w^4 + 24 z^3 - 22 z^2 w + 9 z w^2"
    " - 34 z^2 + 12 z w - 5 w^2 + 23 z - 6";

inline const char* const kZeroP = "2 z^3 w^4 + z^3 w^3 - w^4 + 7 z^3 - 7 w^3 - w^2 - w + 4";
inline const char* const kZeroQ = "z^4 w^2 - 2 z^3 w^2 - 53 z^4 + 13 z^2 w^2 + 15 z^3 + 13";

inline const char* const kSplitP =
    "2i z^3 w^2 + 3 z^3 w + z^3 + 5 z^2 w + 2i z w^2 + 3 z w + z + 2i w^2 + 28 w + 1";
inline const char* const kSplitQ = "z^2 w^3 + 1";
inline const char* const kSplitProduct = "(z^3 + z + 1)(2i w^3 + 1)";

inline const char* const kScalarP = kZeroP;
inline const char* const kScalarQ = "z^4 w^2 - 2 z^3 w^2 - 53 z^4 + 13 z^2 w^2 - 15 z^3 + 13";

inline const char* const kValidP =
    "2 z^3 w^4 + i z^3 w^3 + 3 z^2 w^4 + (7 + i) z^2 w^3 + z^2 w^2 - 2i w^4 + 7 z^3 + 2 z^2 w + w^3 + 3 z^2 - 7i";
inline const char* const kValidQ =
    "2 z^4 w^4 + z^3 w^5 + 5 z^3 w^4 + 3 z^2 w^5 + 4 z^4 w^2 + i z^3 w^3 + 13 z^2 w^4 + z w^5"
    " + (4 + 6i) z^3 w^2 + 3i z^2 w^3 + 3 z w^4 - w^5 + z^4 + z^3 w"
    " + (8 + 18i) z^2 w^2 + i z w^3 + (2i - 3) w^4 + 2 z^3 + 3 z^2 w + 6i z w^2"
    " - i w^3 + 5 z^2 + z w - 2i w^2 + z - w + (i - 1)";
inline const char* const kValidProduct =
    "(-7+i) z^3 w^5 + (-17+19i) z^3 w^4 + (9+i) z^2 w^5 - (1+7i) z^3 w^3"
    " + (51+11i) z^2 w^4 + (2-10i) z^3 w^2 + (-1+9i) z^2 w^3 + (1+7i) w^5"
    " + (-7+i) z^3 w + (42+70i) z^2 w^2 + (19+17i) w^4 + (-5+9i) z^3"
    " + (9+i) z^2 w + (-7+i) w^3 + (21+5i) z^2 - (10+2i) w^2"
    " + (1+7i) w + (9+5i)";

// Rank-3 decomposition of the square of kP32.
inline const char* const kH1 = "-z^6 - 2i z^5 - 21 z^4 - 24i z^3 - 119 z^2 - 22i z + 1";
inline const char* const kH2 =
    "10i z^6 - (10+4i) z^5 + (4+220i) z^4 - (120+48i) z^3 + (8+1210i) z^2 - (110+44i) z + 4";
inline const char* const kH3 =
    "(25+2i) z^6 - (22+12i) z^5 + (566+44i) z^4 - (264+144i) z^3 + (3057+242i) z^2 - (242+132i) z + 16";
inline const char* const kG1 = "w^4 + (-15792/841 + 11872/841i) w + (509432/24389 + 776720/24389i)";
inline const char* const kG2 = "w^3 + (5050/841 + 3528/841i) w + (149563/24389 - 83748/24389i)";
inline const char* const kG3 = "w^2 + (34/29 - 56/29i) w + (-495/841 - 952/841i)";

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace rescorr::testing

namespace rescorr {
inline void PrintTo(const BiPoly& p, std::ostream* os) { *os << print(p); }
inline void PrintTo(const UniPoly& p, std::ostream* os) { *os << print(p, 'x'); }
} // namespace rescorr
