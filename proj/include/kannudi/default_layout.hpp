#ifndef KANNUDI_DEFAULT_LAYOUT_HPP
#define KANNUDI_DEFAULT_LAYOUT_HPP

#include <string_view>

namespace kannudi {

// Embedded copy of layouts/kgp_default.layout; a test keeps the two in sync.
inline constexpr std::string_view kDefaultLayoutName = "kgp_default";
inline constexpr std::string_view kDefaultLayoutText = R"layout(# Default OPOK layout (KGP / Nudi assignments).
# BASE SHIFTFLAG ACTION
# One phoneme per key and one key per phoneme. F and X are unassigned.

# top row
q 0 tta
q 1 ttha
w 0 dda
w 1 ddha
e 0 e
e 1 ee
r 0 ra
r 1 ru
t 0 ta
t 1 tha
y 0 ya
y 1 ai
u 0 u
u 1 uu
i 0 i
i 1 ii
o 0 o
o 1 oo
p 0 pa
p 1 pha

# home row
a 0 a
a 1 aa
s 0 sa
s 1 sha
d 0 da
d 1 dha
f 0 virama
g 0 ga
g 1 gha
h 0 ha
h 1 visarga
j 0 ja
j 1 jha
k 0 ka
k 1 kha
l 0 la
l 1 lla

# bottom row
z 0 nya
z 1 nga
x 0 ssa
c 0 ca
c 1 cha
v 0 va
v 1 au
b 0 ba
b 1 bha
n 0 na
n 1 nna
m 0 ma
m 1 anusvara
)layout";

}  // namespace kannudi

#endif  // KANNUDI_DEFAULT_LAYOUT_HPP
