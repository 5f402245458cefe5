#include <string.h>
#include <tee_internal_api.h>

static uint32_t table[32];

static void set_slot(TEE_Param p[4], uint32_t v)
{
    if (v != 0)
        table[p[0].value.a] = v;
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_VALUE_INPUT,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    set_slot(params, 7);
    return TEE_SUCCESS;
}
