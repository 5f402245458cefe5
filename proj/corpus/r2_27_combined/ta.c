#include <string.h>
#include <tee_internal_api.h>

#define CMD_IMPORT 1
#define CMD_RESET 2

static TEE_Result import_cert(TEE_Param p[4])
{
    uint8_t der[1024];

    memcpy(der, p[2].memref.buffer, p[2].memref.size);
    return TEE_SUCCESS;
}

static TEE_Result cmd_import(uint32_t param_types, TEE_Param params[4])
{
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_MEMREF_INPUT,
                                   TEE_PARAM_TYPE_NONE);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    return import_cert(params);
    return TEE_SUCCESS;
}

static TEE_Result cmd_reset(uint32_t param_types, TEE_Param params[4])
{
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_NONE,
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
    case CMD_IMPORT:
        return cmd_import(param_types, params);
    case CMD_RESET:
        return cmd_reset(param_types, params);
    default:
        return TEE_ERROR_NOT_SUPPORTED;
    }
}
