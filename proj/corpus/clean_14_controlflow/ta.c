#include <string.h>
#include <tee_internal_api.h>

static uint8_t table[16];

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_VALUE_INPUT);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    uint32_t idx = params[3].value.a;

    if (idx >= 16)
        return TEE_ERROR_BAD_PARAMETERS;
    table[idx] = 1;
    return TEE_SUCCESS;
}
