#include <stdio.h>
#include <string.h>
#include <tee_client_api.h>

static TEEC_Result send_command(TEEC_Operation *op, TEEC_Session *sess, uint32_t cmd)
{
    uint32_t origin;
    return TEEC_InvokeCommand(sess, cmd, op, &origin);
}

int run_client(TEEC_Context *ctx, TEEC_Session *sess)
{
    TEEC_Operation op;
    uint32_t origin;
    TEEC_Result res;
    char in2[] = "request-2";

    memset(&op, 0, sizeof(op));
    op.paramTypes = TEEC_PARAM_TYPES(TEEC_NONE, TEEC_NONE, TEEC_MEMREF_TEMP_INPUT, TEEC_NONE);
    op.params[2].tmpref.buffer = in2;
    op.params[2].tmpref.size = sizeof(in2);
    res = send_command(&op, sess, CMD_RUN);
    if (res != TEEC_SUCCESS)
        return -1;
    return 0;
}
