#include <string.h>
#include <tee_internal_api.h>

#define CMD_EXPORT 1
#define CMD_PING 2

static uint8_t digest_key[32];

static TEE_Result cmd_export(uint32_t param_types, TEE_Param params[4])
{
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_MEMREF_OUTPUT,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    uint8_t digest[32];

    compute_digest(digest);
    if (params[0].memref.size < sizeof(digest))
        return TEE_ERROR_SHORT_BUFFER;
    TEE_MemMove(params[0].memref.buffer, digest_key, sizeof(digest_key));
    return TEE_SUCCESS;
}

static TEE_Result cmd_ping(uint32_t param_types, TEE_Param params[4])
{
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_VALUE_INPUT,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    (void)params;
    return TEE_SUCCESS;
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    switch (cmd_id) {
    case CMD_EXPORT:
        return cmd_export(param_types, params);
    case CMD_PING:
        return cmd_ping(param_types, params);
    default:
        return TEE_ERROR_NOT_SUPPORTED;
    }
}
