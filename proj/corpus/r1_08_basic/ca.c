#include <stdio.h>
#include <string.h>
#include <tee_client_api.h>

int run_client(TEEC_Context *ctx, TEEC_Session *sess)
{
    TEEC_Operation op;
    uint32_t origin;
    TEEC_Result res;

    memset(&op, 0, sizeof(op));
    op.paramTypes = TEEC_PARAM_TYPES(TEEC_NONE, TEEC_NONE, TEEC_VALUE_OUTPUT, TEEC_NONE);
    res = TEEC_InvokeCommand(sess, CMD_RUN, &op, &origin);
    if (res != TEEC_SUCCESS)
        return -1;
    printf("%u\n", op.params[2].value.a);
    return 0;
}
