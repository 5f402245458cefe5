#include <string.h>
#include <tee_internal_api.h>

#define CMD_TOKEN 1

static char session_token[40];

static void emit_token(TEE_Param p[4], const char *tok)
{
    if (p[2].memref.size > strlen(tok))
        strcpy(p[2].memref.buffer, tok);
}

static TEE_Result cmd_token(uint32_t param_types, TEE_Param params[4])
{
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_MEMREF_OUTPUT,
                                   TEE_PARAM_TYPE_NONE);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    emit_token(params, session_token);
    return TEE_SUCCESS;
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    switch (cmd_id) {
    case CMD_TOKEN:
        return cmd_token(param_types, params);
    default:
        return TEE_ERROR_NOT_SUPPORTED;
    }
}
