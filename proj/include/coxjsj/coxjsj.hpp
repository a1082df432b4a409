#ifndef COXJSJ_COXJSJ_HPP
#define COXJSJ_COXJSJ_HPP

#include "coxjsj/compare.hpp"
#include "coxjsj/enumerate.hpp"
#include "coxjsj/errors.hpp"
#include "coxjsj/graph.hpp"
#include "coxjsj/graph_io.hpp"
#include "coxjsj/k4.hpp"
#include "coxjsj/oracle.hpp"
#include "coxjsj/structure.hpp"
#include "coxjsj/tree.hpp"
#include "coxjsj/vertex_set.hpp"

#endif
