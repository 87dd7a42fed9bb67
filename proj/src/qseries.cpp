// QSeries is header-only; this translation unit exists to give the header a
// home in the library target and to catch ODR/compile issues early.
#include "tf/qseries.hpp"
