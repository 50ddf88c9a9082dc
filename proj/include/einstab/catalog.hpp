#ifndef EINSTAB_CATALOG_HPP
#define EINSTAB_CATALOG_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "einstab/signomial.hpp"
#include "einstab/slice.hpp"
#include "einstab/space.hpp"

namespace einstab {

enum class Family { su_n, su2n_mod_spn, so2n_flag, e6_su2_so6 };

struct FamilyInfo {
  Family id;
  const char* name;
  const char* title;
  int min_n;     // smallest valid parameter
  bool uses_n;   // false: n is ignored
};

// Stable order: su_n, su2n_mod_spn, so2n_flag, e6_su2_so6.
const std::vector<FamilyInfo>& families();
const FamilyInfo& family_info(Family family);
std::optional<Family> parse_family(std::string_view name);

// A designated critical point of scal on the unit-volume slice together with
// the curve that certifies it is not a local maximum.
struct CatalogEntry {
  std::string family;  // family name, or "custom"
  int n = 0;
  std::string label;
  std::optional<HomogeneousSpace> space;  // absent for reduced-form families
  SliceChart chart;
  Coords critical_point;
  std::optional<Coords> kernel_direction;
  std::optional<Number> expected_s3;
  std::string note;
};

// Throws RangeError when n is outside the family's range.
CatalogEntry build(Family family, int n = 0);

// SU(n) as SU(n)/{e} with summands su(n-1), C^{n-1}, R A_0 and Q = -Killing.
HomogeneousSpace su_n_space(int n);
// E6/SU(2)xSO(6): dims (20, 40), [122] = 10.
HomogeneousSpace e6_space();

// Two-summand model of SO(2n)/T^n where x sits on the blocks p_1j and y on
// the others. Keys use 0 for x and 1 for y.
TripleMap collapsed_so2n_constants(int n);
HomogeneousSpace collapsed_so2n_space(int n);

// Unit-volume normalizer a of the symmetric metric (a, a/2, n a/(2n-1)) on
// SU(2n)/Sp(n) presented as SU(2n-1)/Sp(n-1).
double su2n_normalizer(int n);
// Reduced scal of SU(2n)/Sp(n) in the coordinates (x, y), z eliminated.
Signomial su2n_reduced_scal(int n);

// Space file plus optional hints; the critical point falls back to the first
// point found by multi-start search (degenerate ones preferred).
CatalogEntry load_custom(const std::string& path);

}  // namespace einstab

#endif
