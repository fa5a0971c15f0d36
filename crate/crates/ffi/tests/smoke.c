#include <stdio.h>
#include <string.h>
#include "alpha_traversal.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s\n", #cond); return 1; } } while (0)

int main(void) {
    AlphaTree *t = NULL;
    AlphaStats s;
    CHECK(alpha_tree_parse("M 1", &t) == ALPHA_STATUS_OK);
    CHECK(alpha_tree_stats(t, &s) == ALPHA_STATUS_OK);
    CHECK(s.size == 3 && s.tsl == 4 && s.cost == 3);
    alpha_tree_free(t);

    CHECK(alpha_tree_parse("(..", &t) == ALPHA_STATUS_PARSE_ERROR);
    CHECK(strstr(alpha_last_error(), "byte 0") != NULL);

    AlphaDigits *d = NULL;
    CHECK(alpha_certify(256, &d) == ALPHA_STATUS_OK);
    CHECK(alpha_digits_certified_count(d) >= 55);
    CHECK(strncmp(alpha_digits_fraction(d), "4146453231134266", 16) == 0);
    alpha_digits_free(d);
    puts("ok");
    return 0;
}
