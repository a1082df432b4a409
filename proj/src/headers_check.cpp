// Each public header must compile on its own; this translation unit includes them one by one
// through the umbrella header and is built as part of the default target.
#include "coxjsj/coxjsj.hpp"

namespace coxjsj {
int headers_check_anchor() { return max_vertices; }
} // namespace coxjsj
