#include <stdio.h>
#include <string.h>

#include "skcl.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      const char *m = skcl_last_error_message();                     \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
              m ? m : "no message");                                 \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  const char *fdex1 =
      "{\"n\":3,\"mu\":[[\"1\",\"2\",\"1\"],[\"1/2\",\"1\",\"2\"],[\"1\",\"1/2\",\"1\"]],"
      "\"b\":[[\"0\",\"0\",\"1\"],[\"0\",\"0\",\"0\"],[\"1\",\"0\",\"0\"]]}";
  skcl_presentation *p = NULL;
  skcl_algebra *a = NULL;
  size_t dim = 0;
  char *out = NULL;

  CHECK(skcl_presentation_from_json(fdex1, &p) == SKCL_STATUS_OK);
  CHECK(skcl_presentation_n(p) == 3);
  CHECK(skcl_algebra_new(p, &a) == SKCL_STATUS_OK);
  CHECK(skcl_algebra_dimension(a, &dim) == SKCL_STATUS_OK);
  CHECK(dim == 8);

  CHECK(skcl_algebra_normal_form(a, "[{\"word\":[3,1,3],\"coeff\":\"1\"}]", &out) == SKCL_STATUS_OK);
  CHECK(strcmp(out, "[{\"word\":[3],\"coeff\":\"2\"}]") == 0);
  skcl_string_free(out);

  CHECK(skcl_run_command("{\"command\":\"asreg\"}", fdex1, &out) == SKCL_STATUS_PRECONDITION);
  CHECK(skcl_last_error_message() != NULL);
  CHECK(skcl_algebra_dimension(NULL, &dim) == SKCL_STATUS_NULL_POINTER);

  skcl_algebra_free(a);
  skcl_presentation_free(p);
  printf("ok\n");
  return 0;
}
