/*
 * Copyright 2026 The anneal-rbm Authors
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

#ifndef ANNEAL_RBM_RBM_H
#define ANNEAL_RBM_RBM_H

/*
 * C interface of libannealrbm.
 *
 * Conventions:
 *  - Every call returns an rbm_status. On failure the message is available
 *    from rbm_last_error() (thread local, valid until the next call on the
 *    same thread).
 *  - Objects are opaque handles released with the matching *_free function;
 *    *_free(NULL) is a no-op.
 *  - Text results use a size query: pass buf = NULL to receive the required
 *    size (including the terminating NUL) in *len. A buffer that is too small
 *    yields RBM_ERR_BUFFER_TOO_SMALL with *len set to the required size.
 *  - *_save functions take an optional provenance JSON object that is stored
 *    under the "provenance" key of the written file.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(RBM_BUILDING_LIBRARY)
#define RBM_API __attribute__((visibility("default")))
#else
#define RBM_API
#endif

typedef enum rbm_status {
    RBM_OK = 0,
    RBM_ERR_INVALID_ARGUMENT = 1,
    RBM_ERR_NULL_POINTER = 2,
    RBM_ERR_IO = 3,
    RBM_ERR_FORMAT = 4,
    RBM_ERR_CONTRACT = 5,
    RBM_ERR_INFEASIBLE = 6,
    RBM_ERR_BUFFER_TOO_SMALL = 7,
    RBM_ERR_UNKNOWN = 99
} rbm_status;

typedef struct rbm_graph rbm_graph;
typedef struct rbm_structure rbm_structure;
typedef struct rbm_problem rbm_problem;
typedef struct rbm_instance rbm_instance;
typedef struct rbm_samples rbm_samples;

typedef enum rbm_structure_kind {
    RBM_STRUCTURE_PARTITION = 0,
    RBM_STRUCTURE_QAC = 1,
    RBM_STRUCTURE_COMBINED = 2
} rbm_structure_kind;

typedef struct rbm_generator_params {
    double large;
    double small;
    double p_large;
    double beta;
    uint64_t seed;
} rbm_generator_params;

typedef struct rbm_anneal_params {
    uint32_t num_reads;
    uint32_t sweeps;
    uint64_t seed;
    double t_hot;
    double t_cold;
} rbm_anneal_params;

/* Library */
RBM_API const char* rbm_version(void);
RBM_API const char* rbm_last_error(void);
RBM_API const char* rbm_status_name(rbm_status status);
RBM_API rbm_status rbm_set_threads(unsigned threads);

/* Hardware graphs */
RBM_API rbm_status rbm_graph_pegasus(uint32_t m, rbm_graph** out);
RBM_API rbm_status rbm_graph_chimera(uint32_t rows, uint32_t cols, uint32_t shore, rbm_graph** out);
RBM_API rbm_status rbm_graph_load(const char* path, rbm_graph** out);
RBM_API rbm_status rbm_graph_from_json(const char* json, rbm_graph** out);
RBM_API rbm_status rbm_graph_apply_defects(const rbm_graph* g, const char* defects_json, rbm_graph** out);
RBM_API rbm_status rbm_graph_apply_defects_file(const rbm_graph* g, const char* path, rbm_graph** out);
RBM_API rbm_status rbm_graph_counts(const rbm_graph* g, size_t* nodes, size_t* edges);
RBM_API rbm_status rbm_graph_stats_json(const rbm_graph* g, char* buf, size_t* len);
RBM_API rbm_status rbm_graph_to_json(const rbm_graph* g, char* buf, size_t* len);
RBM_API rbm_status rbm_graph_save(const rbm_graph* g, const char* path, const char* provenance_json);
RBM_API void rbm_graph_free(rbm_graph* g);

/* Embedding structures */
RBM_API rbm_status rbm_partition(const rbm_graph* g, uint32_t k, rbm_structure** out);
RBM_API rbm_status rbm_tile_qac(const rbm_graph* g, rbm_structure** out);
RBM_API rbm_status rbm_combine(const rbm_graph* g, uint32_t k, rbm_structure** out);
RBM_API rbm_status rbm_structure_load(const char* path, rbm_structure** out);
RBM_API rbm_status rbm_structure_save(const rbm_structure* s, const char* path, const char* provenance_json);
RBM_API rbm_status rbm_structure_to_json(const rbm_structure* s, char* buf, size_t* len);
RBM_API rbm_status rbm_structure_kind_of(const rbm_structure* s, rbm_structure_kind* kind);
/* Replica count (1 for a bare QAC tiling). */
RBM_API rbm_status rbm_structure_replicas(const rbm_structure* s, uint32_t* replicas);
/* Size of the logical graph shared by the replicas. */
RBM_API rbm_status rbm_structure_logical_size(const rbm_structure* s, size_t* nodes, size_t* edges);
/* Verification report as JSON; *pass is 1 or 0. */
RBM_API rbm_status rbm_structure_verify(const rbm_structure* s, const rbm_graph* g, int* pass, char* buf,
                                        size_t* len);
RBM_API void rbm_structure_free(rbm_structure* s);

/* Ising problems */
RBM_API rbm_status rbm_problem_load(const char* path, rbm_problem** out);
RBM_API rbm_status rbm_problem_from_json(const char* json, rbm_problem** out);
RBM_API rbm_status rbm_problem_save(const rbm_problem* p, const char* path, const char* provenance_json);
RBM_API rbm_status rbm_problem_to_json(const rbm_problem* p, char* buf, size_t* len);
RBM_API rbm_status rbm_problem_variables(const rbm_problem* p, uint32_t* n);
RBM_API rbm_status rbm_problem_energy(const rbm_problem* p, const int8_t* spins, size_t n, double* energy);
RBM_API rbm_status rbm_problem_hash(const rbm_problem* p, char* buf, size_t* len);
/*
 * Physical problem for a method on a structure:
 *   "rbm"  replicate over every replica (partition or combined)
 *   "qac"  QAC encoding with penalty alpha (qac or combined, region 0)
 *   "sqa"  the same encoding with alpha = 0 for qac/combined structures,
 *          a single replica for partitions
 * host may be NULL; when given, every physical coupler is checked.
 */
RBM_API rbm_status rbm_problem_embed(const rbm_problem* logical, const rbm_structure* s, const char* method,
                                     double alpha, const rbm_graph* host, rbm_problem** out);
RBM_API void rbm_problem_free(rbm_problem* p);

/* Planted instances */
RBM_API rbm_status rbm_generator_defaults(rbm_generator_params* params);
/* Loop cover over the structure's logical graph. */
RBM_API rbm_status rbm_generate(const rbm_structure* s, const rbm_generator_params* params, rbm_instance** out);
/* Loop cover over every active qubit and coupler of a graph. */
RBM_API rbm_status rbm_generate_on_graph(const rbm_graph* g, const rbm_generator_params* params, rbm_instance** out);
RBM_API rbm_status rbm_instance_load(const char* path, rbm_instance** out);
RBM_API rbm_status rbm_instance_save(const rbm_instance* inst, const char* path, const char* provenance_json);
RBM_API rbm_status rbm_instance_to_json(const rbm_instance* inst, char* buf, size_t* len);
RBM_API rbm_status rbm_instance_problem(const rbm_instance* inst, rbm_problem** out);
RBM_API rbm_status rbm_instance_planted_energy(const rbm_instance* inst, double* energy);
RBM_API rbm_status rbm_instance_verify(const rbm_instance* inst, uint32_t brute_force_cap, int* pass, char* buf,
                                       size_t* len);
RBM_API void rbm_instance_free(rbm_instance* inst);

/* Samplers */
RBM_API rbm_status rbm_anneal_defaults(rbm_anneal_params* params);
/* noise_json may be NULL; region biases use the problem's placement. */
RBM_API rbm_status rbm_sample_sa(const rbm_problem* p, const rbm_anneal_params* params, const char* noise_json,
                                 rbm_samples** out);
/* Reads are validated against p and their energies recomputed. */
RBM_API rbm_status rbm_samples_load(const char* path, const rbm_problem* p, rbm_samples** out);
RBM_API rbm_status rbm_samples_from_json(const char* json, const rbm_problem* p, rbm_samples** out);
RBM_API rbm_status rbm_samples_save(const rbm_samples* s, const char* path, const char* provenance_json);
RBM_API rbm_status rbm_samples_to_json(const rbm_samples* s, char* buf, size_t* len);
RBM_API rbm_status rbm_samples_size(const rbm_samples* s, size_t* reads, size_t* variables);
RBM_API rbm_status rbm_samples_read(const rbm_samples* s, size_t index, int8_t* spins, size_t n, double* energy);
RBM_API rbm_status rbm_samples_min_energy(const rbm_samples* s, double* energy);
/* Extra metadata merged into the sample set's params object. */
RBM_API rbm_status rbm_samples_annotate(rbm_samples* s, const char* params_json);
RBM_API void rbm_samples_free(rbm_samples* s);
RBM_API rbm_status rbm_solve_exact(const rbm_problem* p, uint32_t cap, double* min_energy, char* buf, size_t* len);

/* Decoding; results are DecodedSolution JSON. */
RBM_API rbm_status rbm_decode_rbm(const rbm_samples* s, const rbm_structure* structure, const rbm_problem* logical,
                                  char* buf, size_t* len);
RBM_API rbm_status rbm_decode_qac(const rbm_samples* s, const rbm_problem* logical, int include_penalty, char* buf,
                                  size_t* len);
RBM_API rbm_status rbm_decode_sqa(const rbm_samples* const* sets, size_t count, const rbm_problem* logical,
                                  char* buf, size_t* len);

/* Experiments and reports. formats is a comma list of csv,json,svg (NULL for all). */
RBM_API rbm_status rbm_experiment_run(const char* config_json, const char* study, const char* out_dir,
                                      const char* formats, const char* provenance_json);
RBM_API rbm_status rbm_report_render(const char* report_path, const char* out_dir, const char* formats);
/* Single-cell report from decoded solution files paired with their instances. */
RBM_API rbm_status rbm_report_from_decoded(const char* const* decoded_paths, const char* const* instance_paths,
                                           size_t count, uint32_t k, const char* out_dir, const char* formats,
                                           const char* provenance_json);

#ifdef __cplusplus
}
#endif

#endif /* ANNEAL_RBM_RBM_H */
