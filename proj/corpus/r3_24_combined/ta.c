#include <string.h>
#include <tee_internal_api.h>

#define TA_TEST_APP_FILL_MEM_BUF 1

static TEE_Result fill(TEE_Param p[4])
{
    uint8_t *dst = p[2].memref.buffer;

    (void)dst;
    return TEE_SUCCESS;
}

static TEE_Result cmd_fill(uint32_t param_types, TEE_Param params[4])
{
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE);

    (void)exp;
    return fill(params);
    return TEE_SUCCESS;
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    switch (cmd_id) {
    case TA_TEST_APP_FILL_MEM_BUF:
        return cmd_fill(param_types, params);
    default:
        return TEE_ERROR_NOT_SUPPORTED;
    }
}
