/* C interface to the vankamp shared library.
 *
 * A session wraps one relative presentation, opened from the line-oriented
 * presentation text format. Every operation takes a JSON configuration
 * string and produces a self-describing JSON document (or DOT text for the
 * renderer) in a heap string the caller releases with rh_string_free.
 *
 * Return codes double as process exit codes for the CLI:
 *   RH_OK      success, or a semi-decision procedure that terminated
 *   RH_ERROR   malformed input, oracle protocol violation, internal error
 *   RH_BUDGET  a configured budget or cap ran out before a verdict
 *
 * On RH_ERROR the output pointer is left untouched and rh_last_error holds
 * the message. On RH_BUDGET the output document is still produced (it
 * carries the partial report and, for search, a resumption checkpoint).
 */
#ifndef VANKAMP_H
#define VANKAMP_H

#ifdef __cplusplus
extern "C" {
#endif

#define RH_OK 0
#define RH_ERROR 1
#define RH_BUDGET 2

typedef struct rh_session rh_session;

/* Parses and realizes a presentation. NULL on failure; the message is then
 * available from rh_last_error(NULL). */
rh_session* rh_open(const char* presentation_text);
void rh_close(rh_session* s);

/* Message of the most recent failing call on this session; with s == NULL,
 * of the most recent failing rh_open on this thread. Owned by the library,
 * valid until the next call on the same session/thread. */
const char* rh_last_error(const rh_session* s);

/* Releases strings returned through out parameters. */
void rh_string_free(char* s);

/* Configuration is a JSON object; each operation reads the keys it needs:
 *   "pack":   {"mode":"paper","K":"1000000"} or
 *             {"mode":"scaled","K":"...","B":"...","area_cap":"...",
 *              "proper_bound":"..."}     (big integers as decimal strings)
 *   "caps":   {"max_area":N,"max_complexity":N,"max_boundary_length":N,
 *              "ball_radius_cap":N?}     (diagram enumeration caps)
 *   "budget": {"max_rounds":N,"max_words_per_round":N,
 *              "relator_length_cap":N,"k_stride":"N","radius_cap":N}
 *   "search": {"max_steps":N,"step_quantum":N,"max_tuple_n":N,
 *              "max_word_length":N,
 *              "tietze":{"max_moves":N,"max_relator_length":N,
 *                        "max_generators":N,"max_conjugate_factors":N?,
 *                        "max_conjugator_length":N?},
 *              "class":{"list":[presentation texts]} or {"cmd":[argv]}}
 *   "cap":    N   (parabolic geodesic length guard, default 64)
 */

/* Relative hyperbolicity detection loop. RH_BUDGET when the round budget
 * ran out. Needs "pack" and "budget". */
int rh_detect(rh_session* s, const char* config_json, char** out_json);

/* Exact minimal filling area of a hat word (CLI hat-word syntax). Needs
 * "caps". RH_BUDGET when the caps exclude every filling. */
int rh_area(rh_session* s, const char* hat_word, const char* config_json, char** out_json);

/* Thick diagram corpus dump within "caps". state_json (nullable) resumes a
 * previous run's checkpoint; the output embeds the advanced state. */
int rh_enumerate(rh_session* s, const char* config_json, const char* state_json,
                 char** out_json);

/* Standard (fan) filling of a word of parabolic letters of the 1-based
 * index. Needs at most "cap". */
int rh_fill(rh_session* s, int parabolic, const char* hat_word, const char* config_json,
            char** out_json);

/* Surgery reduction candidates of a serialized diagram. "caps", when
 * present, activates bounded area minimization of the augmented pieces. */
int rh_surgery(rh_session* s, const char* diagram_json, const char* config_json,
               char** out_json);

/* Parabolic subgroup presentations (relators up to the budget's
 * relator_length_cap), with properness verdicts when "pack" is present. */
int rh_parabolics(rh_session* s, const char* config_json, char** out_json);

/* Dovetailed parabolic-class search. Needs "pack" and "search".
 * checkpoint_json (nullable) resumes; on RH_BUDGET the output embeds the
 * next checkpoint. */
int rh_search(rh_session* s, const char* config_json, const char* checkpoint_json,
              char** out_json);

/* DOT text of a serialized diagram (incidence != 0: its piece incidence
 * graph instead of the 1-skeleton). */
int rh_render(rh_session* s, const char* diagram_json, int incidence, char** out_dot);

/* Structural invariant suite over the enumerated corpus under "caps"; the
 * report lists every violation (an empty list certifies the corpus). */
int rh_check(rh_session* s, const char* config_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* VANKAMP_H */
