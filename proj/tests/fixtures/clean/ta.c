#include <tee_internal_api.h>

static int add(int a, int b)
{
    return a + b;
}
