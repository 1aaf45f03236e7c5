// Copyright (c) 2026 The pa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PA_H
#define PA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PA_API __declspec(dllexport)
#else
#define PA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns PA_OK or an error code; on error pa_last_error() holds
 * a message for the calling thread. Output handles and strings are only
 * written on success. Strings returned through char** are owned by the
 * caller and released with pa_free_string. */
typedef enum pa_status {
  PA_OK = 0,
  PA_E_SYNTAX = 1,   /* malformed formula, term or JSON document */
  PA_E_DOMAIN = 2,   /* argument outside the operation's domain */
  PA_E_LIMIT = 3,    /* a computational limit was exceeded */
  PA_E_ARGUMENT = 4, /* null pointer or inconsistent sizes */
  PA_E_INTERNAL = 5
} pa_status;

typedef struct pa_formula pa_formula; /* Presburger formula */
typedef struct pa_set1 pa_set1;       /* semilinear subset of Z in canonical form */
typedef struct pa_pwfn pa_pwfn;       /* piecewise-affine integer function */
typedef struct pa_cell pa_cell;       /* weak cell */
typedef struct pa_expr pa_expr;       /* family expression (T_n or S_n) */
typedef struct pa_source pa_source;   /* membership source for sparseness scans */

PA_API const char* pa_version(void);
PA_API const char* pa_last_error(void);
PA_API void pa_free_string(char* s);

/* Formulas */
PA_API pa_status pa_formula_parse(const char* text, pa_formula** out);
PA_API void pa_formula_free(pa_formula* f);
PA_API pa_status pa_formula_to_string(const pa_formula* f, char** out);
/* JSON array of the free variable names, sorted. */
PA_API pa_status pa_formula_free_variables(const pa_formula* f, char** json);
PA_API pa_status pa_formula_eliminate(const pa_formula* f, pa_formula** out);
/* Requires a sentence. */
PA_API pa_status pa_formula_decide(const pa_formula* f, int* truth);
PA_API pa_status pa_formula_eval(const pa_formula* f, size_t n, const char* const* names,
                                 const int64_t* values, int* truth);

/* One-dimensional semilinear sets */
PA_API pa_status pa_set1_from_formula(const pa_formula* f, pa_set1** out);
PA_API void pa_set1_free(pa_set1* s);
PA_API pa_status pa_set1_contains(const pa_set1* s, int64_t x, int* member);
PA_API pa_status pa_set1_count(const pa_set1* s, int64_t h, int64_t* count);
/* Exact natural density as "p/q". */
PA_API pa_status pa_set1_density(const pa_set1* s, char** out);
/* {"period","threshold","positive_residues","negative_residues",
 *  "insertions","deletions","density"} */
PA_API pa_status pa_set1_report(const pa_set1* s, char** json);

/* Heights. Tuples are written "3/4,5/4" or "2,3". */
/* {"tuple","H","logH","H_places"} */
PA_API pa_status pa_height(const char* tuple, char** json);
/* Decimal 2^{30n^2} (32n^2)^r d^{3r+2n}. */
PA_API pa_status pa_subspace_bound(unsigned n, unsigned r, unsigned d, char** out);
/* 1 for S1, 2 for S2. x: positive integers, c: nonzero, k: nonzero rationals. */
PA_API pa_status pa_height_classify(const char* x, const char* c, const char* k, int* cls);

/* Power sums k_1 a_1^e_1 + ... + k_n a_n^e_n = c. k and a are comma lists,
 * h a decimal integer; exponent_cap 0 means the default (256). */
/* {"k","a","h","caps","possibly_incomplete","solutions":[{"c","exponents"}]} */
PA_API pa_status pa_powers_solve(const char* k, const char* a, const char* h,
                                 unsigned exponent_cap, char** json);
/* {"k","a","h","bound","s1","s2","caps"} */
PA_API pa_status pa_powers_bound(const char* k, const char* a, const char* h, char** json);
/* {"a","f","possibly_incomplete","rows":[{"h","count","ratio"}]} */
PA_API pa_status pa_powers_image_density(const char* a, const pa_pwfn* f, const int64_t* windows,
                                         size_t n_windows, char** json);

/* Piecewise-affine functions. `text` is an affine term ("x - 2*y") or a
 * JSON document {"vars":[...],"pieces":[{"guard","body","divisor"}]}.
 * `vars` is a comma list fixing the argument order for a term; NULL or ""
 * means the term's variables in sorted order. */
PA_API pa_status pa_pwfn_parse(const char* text, const char* vars, pa_pwfn** out);
PA_API void pa_pwfn_free(pa_pwfn* f);
PA_API pa_status pa_pwfn_to_json(const pa_pwfn* f, char** json);
PA_API pa_status pa_pwfn_eval(const pa_pwfn* f, const int64_t* point, size_t n, int64_t* value);
/* Guards disjoint, exhaustive and bodies integral; the error names a witness. */
PA_API pa_status pa_pwfn_validate(const pa_pwfn* f);

/* Weak cells, as JSON {"vars","t","base","lower","upper","residue","modulus"}. */
PA_API pa_status pa_cell_from_json(const char* json, pa_cell** out);
PA_API void pa_cell_free(pa_cell* c);
PA_API pa_status pa_cell_to_json(const pa_cell* c, char** json);
/* point lists vars then t. */
PA_API pa_status pa_cell_contains(const pa_cell* c, const int64_t* point, size_t n, int* member);
/* Defining formula over vars and t. */
PA_API pa_status pa_cell_formula(const pa_cell* c, pa_formula** out);
PA_API pa_status pa_cell_diamond(const pa_cell* a, const pa_cell* b, size_t m, pa_cell** out);
/* JSON array of cells over `vars` (comma list, last one is t). */
PA_API pa_status pa_cell_decompose(const pa_formula* f, const char* vars, char** json);
/* Cells: JSON array of at least two cells; family: JSON family document.
 * Result: JSON array of three expressions. */
PA_API pa_status pa_union_lemma(const char* cells_json, size_t m, const char* family_json,
                                char** json);
/* h(x, e_j) = f(x) + j, h(x, e) = 0 elsewhere; e_points is a comma list of
 * l * n distinct integers. */
PA_API pa_status pa_cover_h(const pa_pwfn* f, int64_t l, int64_t n, const char* e_points,
                            const char* e_var, pa_pwfn** out);

/* Family expressions, as JSON
 * {"fiber_vars","point_vars","kernel":{"formula"}|{"cell"},"family"}. */
PA_API pa_status pa_expr_from_json(const char* json, pa_expr** out);
PA_API void pa_expr_free(pa_expr* e);
PA_API pa_status pa_expr_to_json(const pa_expr* e, char** json);
/* Points of the box lo..hi (one range per point coordinate), as a JSON
 * array of integer arrays in lexicographic order. */
PA_API pa_status pa_expr_eval(const pa_expr* e, const int64_t* lo, const int64_t* hi, size_t dims,
                              char** json);
/* product_cap 0 means the default (10^6). */
PA_API pa_status pa_expr_complement(const pa_expr* e, uint64_t product_cap, pa_expr** out);
PA_API pa_status pa_expr_intersect(const pa_expr* a, const pa_expr* b, uint64_t product_cap,
                                   pa_expr** out);
PA_API pa_status pa_expr_project(const pa_expr* e, pa_expr** out);

/* Sparseness. Set specs: "squarefree", "powers:2,3", "list:1,5", "formula:<qf in x>". */
PA_API pa_status pa_source_parse(const char* spec, pa_source** out);
PA_API void pa_source_free(pa_source* s);
PA_API pa_status pa_source_describe(const pa_source* s, char** out);
PA_API pa_status pa_source_contains(const pa_source* s, int64_t x, int* member);
/* {"set","rows":[{"h","count","ratio"}],"upper","lower"} */
PA_API pa_status pa_sparse_density(const pa_source* s, const int64_t* windows, size_t n_windows,
                                   char** json);
/* {"set","h","rows":[{"N","k","max_run","start","censored"}],"longest"} */
PA_API pa_status pa_sparse_ap_runs(const pa_source* s, int64_t h, int64_t n_max, char** json);
/* {"set","h","rows":[{"b","length","begin","end","censored"}]} for b = 0..b_max */
PA_API pa_status pa_sparse_syndetic(const pa_source* s, int64_t h, int64_t b_max, char** json);

#ifdef __cplusplus
}
#endif

#endif /* PA_H */
