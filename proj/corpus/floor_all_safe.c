#include <assert.h>
int main() {
    int n = 100;
    while (n >= 10 && __VERIFIER_nondet_int()) {
        n = n - 5;
    }
    assert(n >= 0);
    return 0;
}
