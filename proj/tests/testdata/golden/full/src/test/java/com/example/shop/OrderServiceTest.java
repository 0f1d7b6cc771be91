package com.example.shop;

import static org.junit.Assert.assertEquals;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Before;
import org.junit.Test;

public class OrderServiceTest {
    private static final String SKU = "A1";

    private Inventory inventory;
    private PriceService prices;
    private OrderService service;

    @Before
    public void setUp() {
        inventory = mock(Inventory.class);
        prices = mock(PriceService.class);
        service = new OrderService(inventory, prices);
        when(inventory.isDiscontinued(SKU)).thenReturn(false);
        when(prices.priceOf(SKU)).thenReturn(10);
    }

    @Test
    public void quotesRegularCustomer() {
        Customer customer = mock(Customer.class);
        when(customer.isPremium()).thenReturn(false);
        assertEquals(30, service.quote(SKU, 3, customer));
    }

    @Test
    public void quotesPremiumCustomer() {
        Customer customer = mock(Customer.class);
        when(customer.isPremium()).thenReturn(true);
        when(customer.getName()).thenReturn("Ann");
        when(prices.discountFor("Ann")).thenReturn(4);
        assertEquals(16, service.quote(SKU, 2, customer));
    }
}
